#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skd/model/model.hpp"

namespace skd {

// Energy thresholds per layer tier. Early and late blocks keep more spectrum.
struct TierSpec {
    std::size_t protected_head = 1;
    std::size_t protected_tail = 1;
    double tau_protected = 0.99;
    double tau_middle = 0.97;
    std::map<MlpMatrix, double> per_matrix_scale{{MlpMatrix::Gate, 1.0}, {MlpMatrix::Up, 0.98}, {MlpMatrix::Down, 0.98}};

    // Throws InvalidThreshold / InvalidConfig.
    void validate(std::size_t n_layers) const;
    bool is_protected(std::size_t layer, std::size_t n_layers) const noexcept;
    // Threshold before bisection scaling, clamped to (0, 1].
    double base_tau(std::size_t layer, std::size_t n_layers, MlpMatrix m) const;
};

struct ScheduleEntry {
    std::size_t layer = 0;
    MlpMatrix matrix = MlpMatrix::Gate;
    std::size_t rank = 1;
    std::int64_t param_delta = 0;  // parameters removed by applying this entry
};

struct PruneSchedule {
    std::vector<ScheduleEntry> entries;
    double tau_scale = 1.0;  // uniform multiplier applied to every tier threshold
};

struct EntryError {
    std::size_t layer = 0;
    MlpMatrix matrix = MlpMatrix::Gate;
    std::size_t rank = 0;
    double rel_frobenius_error = 0.0;
};

struct PruneReport {
    std::string method;  // "svd" or "wanda"
    std::size_t mlp_params_before = 0;  // all-dense MLP parameter count
    std::size_t mlp_params_after = 0;   // nonzero MLP parameters after pruning
    double rho = 0.0;
    std::vector<EntryError> errors;
};

inline constexpr double kRhoTolerance = 0.02;
inline constexpr int kMaxBisectionSteps = 40;

// Per-matrix ranks from tiered energy thresholds. With a target, all
// thresholds are scaled down together by bisection until the resulting
// reduction lands within kRhoTolerance of it. Already factored matrices are
// re-ranked from the spectrum of their product and only shrink.
PruneSchedule build_schedule(const Model& model, const TierSpec& tiers, std::optional<double> target_rho = std::nullopt);

// Replaces scheduled MLP matrices by truncated SVD factors.
struct PruneResult {
    Model model;
    PruneReport report;
};
PruneResult prune_svd(const Model& model, const PruneSchedule& schedule);

// L2 norm of every input feature of every MLP projection over a calibration run.
struct ActivationNorms {
    std::vector<std::vector<double>> gate_up;  // per layer, d_model
    std::vector<std::vector<double>> down;     // per layer, d_ff

    const std::vector<double>& for_matrix(std::size_t layer, MlpMatrix m) const {
        return m == MlpMatrix::Down ? down.at(layer) : gate_up.at(layer);
    }
};

// Start offsets of the calibration windows, drawn with the counter generator.
std::vector<std::size_t> calibration_starts(std::size_t n_bytes, std::size_t n_samples, std::size_t window,
                                            std::uint64_t seed);

// Accumulates norms over `n_samples` windows of `seq_len` bytes drawn from the
// calibration stream with the counter generator. Throws InsufficientData.
ActivationNorms collect_activation_norms(const Model& model, std::span<const std::uint8_t> calibration,
                                         std::size_t n_samples, std::size_t seq_len, std::uint64_t seed);

// Per output row, zeros floor(sparsity * n_in) weights with the smallest
// |W_ij| * norm_j (ties: lower column first). Matrices stay dense.
PruneResult prune_wanda(const Model& model, const ActivationNorms& norms, double sparsity);

// Zero positions chosen for one row; exposed for testing.
std::vector<std::size_t> wanda_row_zeros(std::span<const float> row, std::span<const double> norms, double sparsity);

std::string schedule_to_json(const PruneSchedule& s);
PruneSchedule schedule_from_json(const std::string& text);
std::string report_to_json(const PruneReport& r);
std::string tiers_to_json(const TierSpec& t);
TierSpec tiers_from_json(const std::string& text);

}  // namespace skd
