#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skd/eval/perplexity.hpp"
#include "skd/io/binary.hpp"
#include "skd/train/backward.hpp"
#include "skd/train/train.hpp"

namespace skd {

// Cache file layout (little-endian):
//
//   "SKDC" format_version:u32 k:u32 vocab:u32 seq_len:u32 n_sequences:u32
//   teacher_hash: 32 bytes
//   per sequence: n_positions:u32, then per position
//     k x (token_id:u32 prob:f32), residual:f32
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::uint32_t kDefaultTopK = 32;
inline constexpr double kCacheSumTolerance = 1e-4;
inline constexpr double kKlFloor = 1e-9;

// Sequence i covers corpus[i * seq_len, i * seq_len + n_positions + 1): the
// first n_positions bytes are inputs and position t predicts byte t + 1.
struct CacheSequence {
    std::uint32_t n_positions = 0;
    std::vector<std::uint32_t> ids;  // n_positions * k, descending probability
    std::vector<float> probs;        // n_positions * k
    std::vector<float> residual;     // n_positions

    friend bool operator==(const CacheSequence&, const CacheSequence&) = default;
};

// Read-only view of one cached position.
struct CachedPosition {
    std::span<const std::uint32_t> ids;
    std::span<const float> probs;
    float residual = 0.0f;
};

struct ProbabilityCache {
    std::uint32_t k = kDefaultTopK;
    std::uint32_t vocab = kVocab;
    std::uint32_t seq_len = 0;
    io::Sha256 teacher_hash{};
    std::vector<CacheSequence> sequences;

    CachedPosition at(std::size_t seq, std::size_t pos) const {
        const auto& s = sequences[seq];
        return {std::span(s.ids).subspan(pos * k, k), std::span(s.probs).subspan(pos * k, k), s.residual[pos]};
    }
    std::size_t n_positions() const noexcept;

    friend bool operator==(const ProbabilityCache&, const ProbabilityCache&) = default;
};

// (start, n_positions) of every cache sequence over a corpus of n bytes.
std::vector<std::pair<std::size_t, std::uint32_t>> cache_segments(std::size_t n_bytes, std::size_t seq_len);

// Teacher top-k per position. Throws InvalidK, InvalidConfig,
// InsufficientData (fewer than 2 bytes).
ProbabilityCache build_cache(const Model& teacher, std::span<const std::uint8_t> corpus, std::uint32_t k,
                             std::size_t seq_len);

std::vector<std::uint8_t> serialize_cache(const ProbabilityCache& cache);
// Throws CorruptCache on framing violations or any broken position invariant.
ProbabilityCache deserialize_cache(std::span<const std::uint8_t> bytes);
void save_cache(const ProbabilityCache& cache, const std::filesystem::path& path);
ProbabilityCache load_cache(const std::filesystem::path& path);

// Throws CorruptCache.
void validate_position(const CachedPosition& p, std::uint32_t vocab);

// p -> p^(1/T) over the masses (the last entry being the tail bucket),
// renormalized.
std::vector<double> soften(std::span<const double> masses, double temperature);

struct KDConfig {
    double alpha = 0.5;
    double temperature = 2.0;
    double learning_rate = 3e-5;
    double clip_norm = 1.0;
    std::size_t batch_size = 16;
    std::size_t max_steps = 3000;
    std::size_t eval_every = 100;
    std::size_t patience = 3;
    double min_delta = 0.005;  // relative PPL improvement across the last 3 evals
    std::uint64_t seed = 0;
    bool keep_sparsity = true;  // exact-zero MLP weights stay zero
    EvalProtocol validation{64, 64, true, false};

    // Throws InvalidConfig.
    void validate() const;
};

// alpha * T^2 * KL(soft teacher || soft student buckets) + (1 - alpha) * CE
// for one position. Buckets are the teacher's k ids plus one tail. Writes
// d loss / d logits into `dlogits`. Throws CorruptCache.
template <class T>
double kd_loss(std::span<const T> student_probs, const CachedPosition& cached, std::uint8_t target,
               const KDConfig& cfg, std::span<T> dlogits);

// The bucketed KL term alone (no T^2, no alpha), in nats.
double bucket_kl(std::span<const double> teacher, std::span<const double> student);

// kd_loss as a per-position objective over cache sequence `seq`.
template <class T>
PositionLoss<T> kd_position_loss(const ProbabilityCache& cache, std::size_t seq, std::span<const std::uint8_t> corpus,
                                 const KDConfig& cfg);

// Throws CacheMismatch unless the cache segments `corpus` exactly.
void check_cache_alignment(const ProbabilityCache& cache, std::span<const std::uint8_t> corpus);

struct DistillResult {
    Model model;  // best validation checkpoint
    TrainHistory history;
    std::size_t steps_run = 0;
    std::string stop_reason;  // "patience", "saturated" or "max_steps"
};

// KD training against the cache with validation-based stopping.
DistillResult distill(const Model& student, const ProbabilityCache& cache, std::span<const std::uint8_t> corpus,
                      std::span<const std::uint8_t> validation, const KDConfig& cfg);

// Rebuilds a cache with the same k and segmentation from another teacher.
// Throws InvalidTeacher if the teacher cannot score the segmentation.
ProbabilityCache swap_teacher(const ProbabilityCache& current, const Model& new_teacher,
                              std::span<const std::uint8_t> corpus);

}  // namespace skd
