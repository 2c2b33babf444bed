#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skd/eval/perplexity.hpp"
#include "skd/train/backward.hpp"

namespace skd {

struct TrainConfig {
    std::size_t steps = 1000;
    std::size_t batch_size = 16;
    std::size_t seq_len = 64;
    double learning_rate = 3e-4;
    double clip_norm = 1.0;
    std::uint64_t seed = 0;
    std::size_t eval_every = 100;
    std::size_t warmup_steps = 0;  // linear warmup; 0 disables
    EvalProtocol validation{64, 64, true, false};
};

struct HistoryRecord {
    std::size_t step = 0;
    double train_loss = 0.0;
    double val_ppl = 0.0;
};

struct TrainHistory {
    std::vector<HistoryRecord> records;

    // "step,train_loss,val_ppl" with one row per record.
    std::string to_csv() const;
};

struct TrainResult {
    Model model;  // best validation checkpoint
    TrainHistory history;
};

// splitmix64 over (seed, a, b); stateless so batch order is reproducible.
std::uint64_t counter_random(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;

// `batch_size` windows of seq_len+1 bytes with counter-derived start offsets.
Batch sample_batch(std::span<const std::uint8_t> corpus, std::size_t batch_size, std::size_t seq_len,
                   std::uint64_t seed, std::uint64_t step);

// Adam with bias-corrected moments (beta1 0.9, beta2 0.999, eps 1e-8).
template <class T>
class Adam {
public:
    explicit Adam(const BasicModel<T>& model, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

    // Entries of dense MLP weights that are exactly zero now stay zero for
    // every later step.
    void freeze_zero_mlp_weights(const BasicModel<T>& model);

    void step(BasicModel<T>& model, const Gradients<T>& grads, double lr);

    std::size_t steps_taken() const noexcept { return t_; }

private:
    double beta1_, beta2_, eps_;
    std::size_t t_ = 0;
    std::vector<std::vector<T>> m_, v_;
    std::vector<std::vector<std::uint8_t>> frozen_;  // empty = nothing frozen
};

// Scales grads in place so the global L2 norm is at most clip_norm. Returns
// the norm before clipping.
template <class T>
double clip_global_norm(Gradients<T>& grads, double clip_norm);

template <class T>
double global_norm(const Gradients<T>& grads);

// Cross-entropy pretraining. Throws InsufficientData when the corpus is
// shorter than batch_size * seq_len + 1, NumericalFailure on divergence.
TrainResult train_lm(const Model& init, std::span<const std::uint8_t> corpus, const TrainConfig& config,
                     std::span<const std::uint8_t> validation);

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t coordinates = 0;
    std::string worst_parameter;
};

// Central finite differences of the summed loss against backward_sequence on
// up to `per_param` sampled coordinates of every parameter array.
GradCheckReport grad_check(const ModelD& model, std::span<const std::uint8_t> inputs, const PositionLoss<double>& loss,
                           double h, std::size_t per_param, std::uint64_t seed);

}  // namespace skd
