#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "skd/model/model.hpp"

namespace skd {

// Inputs of the MLP projections of one layer, as seen during a forward pass.
template <class T>
struct MlpInputs {
    BasicMatrix<T> gate_up_in;  // T x d (shared input of gate and up)
    BasicMatrix<T> down_in;     // T x d_ff
};

template <class T>
struct ForwardOutput {
    BasicMatrix<T> probabilities;  // T x vocab
    BasicMatrix<T> logits;         // T x vocab
    std::optional<std::vector<MlpInputs<T>>> hidden_states;
};

// Wall time split of a forward pass, accumulated across calls.
struct ForwardTimer {
    using Clock = std::chrono::steady_clock;
    double attention_ms = 0.0;
    double ffn_ms = 0.0;
    double other_ms = 0.0;
};

// Everything the backward pass needs from one forward pass.
template <class T>
struct LayerActivations {
    BasicMatrix<T> x_in;
    BasicMatrix<T> ln1_hat, ln1_out;
    std::vector<T> ln1_rstd;
    BasicMatrix<T> q, k, v;
    std::vector<BasicMatrix<T>> att_probs;  // per head, T x T
    BasicMatrix<T> att_out;                 // heads concatenated, T x d
    BasicMatrix<T> x_mid;
    BasicMatrix<T> ln2_hat, ln2_out;
    std::vector<T> ln2_rstd;
    BasicMatrix<T> g, u, h;  // T x d_ff
    BasicMatrix<T> gate_mid, up_mid, down_mid;  // T x r when factored
};

template <class T>
struct Activations {
    std::vector<std::uint8_t> tokens;
    std::vector<LayerActivations<T>> layers;
    BasicMatrix<T> x_final;
    BasicMatrix<T> lnf_hat, lnf_out;
    std::vector<T> lnf_rstd;
    BasicMatrix<T> logits;
    BasicMatrix<T> probabilities;
};

inline constexpr double kLayerNormEps = 1e-5;

// Full forward pass retaining activations. Throws InvalidSequence for empty
// or over-length input.
template <class T>
Activations<T> forward_activations(const BasicModel<T>& model, std::span<const std::uint8_t> tokens,
                                   ForwardTimer* timer = nullptr);

template <class T>
ForwardOutput<T> forward(const BasicModel<T>& model, std::span<const std::uint8_t> tokens,
                         bool capture_hidden = false, ForwardTimer* timer = nullptr);

// y = x * W^T for either weight representation; `mid` receives x * B^T when
// the weight is factored.
template <class T>
void linear_forward(const MlpWeight<T>& w, const BasicMatrix<T>& x, BasicMatrix<T>& y, BasicMatrix<T>& mid);

}  // namespace skd
