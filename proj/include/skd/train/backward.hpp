#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "skd/model/forward.hpp"

namespace skd {

// Per-position objective. Returns the loss at position `t` and writes
// d loss / d logits into `dlogits` (which arrives zeroed).
template <class T>
using PositionLoss =
    std::function<double(std::size_t t, std::span<const T> probs, std::span<const T> logits, std::span<T> dlogits)>;

// Gradients share the model's shape tree.
template <class T>
using Gradients = BasicModel<T>;

// Forward + backward over one sequence. Adds scale * d(sum_t loss_t)/d(theta)
// into `grads` and returns sum_t loss_t.
template <class T>
double backward_sequence(const BasicModel<T>& model, std::span<const std::uint8_t> inputs, const PositionLoss<T>& loss,
                         T scale, Gradients<T>& grads);

// Next-byte cross-entropy objective for a window of length L+1 (inputs are
// the first L bytes, targets the last L).
template <class T>
PositionLoss<T> cross_entropy_loss(std::span<const std::uint8_t> window);

// Each window holds seq_len + 1 bytes.
using Batch = std::vector<std::vector<std::uint8_t>>;

template <class T>
struct LossAndGradients {
    double loss = 0.0;  // mean cross-entropy over all positions
    Gradients<T> grads;
};

// Mean next-byte cross-entropy gradients over a batch. Throws
// NumericalFailure for a non-finite loss.
template <class T>
LossAndGradients<T> backward(const BasicModel<T>& model, const Batch& batch);

}  // namespace skd
