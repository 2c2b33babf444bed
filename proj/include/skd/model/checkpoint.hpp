#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skd/io/binary.hpp"
#include "skd/model/model.hpp"

namespace skd {

// Checkpoint file layout (all integers little-endian):
//
//   "SKDM"  format_version:u32
//   n_layers d_model n_heads d_ff vocab max_context : u32 each, seed:u64
//   tensors, in order:
//     token_embedding, position_embedding,
//     per layer: ln1_gain ln1_bias wq wk wv wo ln2_gain ln2_bias gate up down
//     final_gain final_bias output
//   tensor = tag:u8 then
//     tag 0 (dense):    rows:u32 cols:u32 payload rows*cols f32
//     tag 1 (factored): rows:u32 cols:u32 rank:u32 A rows*rank f32, B rank*cols f32
//   Norm vectors are dense 1 x d tensors. Only gate/up/down may be factored.
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> serialize_checkpoint(const Model& model);

// Throws CorruptCheckpoint on bad magic, version, framing, shapes or values.
Model deserialize_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Model& model, const std::filesystem::path& path);
Model load_checkpoint(const std::filesystem::path& path);

// SHA-256 of the serialized checkpoint.
io::Sha256 checkpoint_hash(const Model& model);

}  // namespace skd
