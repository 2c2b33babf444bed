#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "skd/model/model.hpp"

namespace skd {

struct EvalProtocol {
    std::size_t context_len = 128;
    std::size_t stride = 64;
    bool include_final_partial = true;
    // Score each token only in the first window that contains it. Off by
    // default: overlapping positions are scored once per window.
    bool fresh_only = false;

    void validate() const;  // throws InvalidConfig
};

struct EvalResult {
    double ppl = 0.0;
    double mean_nll = 0.0;
    std::size_t token_count = 0;  // scored (window, position) pairs
    EvalProtocol protocol;
};

// Half-open [start, end) windows. Throws InsufficientData for n_tokens < 2.
std::vector<std::pair<std::size_t, std::size_t>> windows(std::size_t n_tokens, const EvalProtocol& protocol);

// Sliding-window perplexity. Within a window every position after the first
// is scored from its in-window prefix.
template <class T>
EvalResult perplexity(const BasicModel<T>& model, std::span<const std::uint8_t> tokens, const EvalProtocol& protocol);

// -log softmax(logits)[target], computed in double.
template <class T>
double nll_from_logits(std::span<const T> logits, std::uint8_t target);

}  // namespace skd
