#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skd/distill/distill.hpp"
#include "skd/model/model.hpp"
#include "skd/prune/prune.hpp"
#include "skd/train/train.hpp"

namespace skd {

enum class TeacherSource { OriginalDense, DenseKd, PreviousRound };
std::string to_string(TeacherSource s);
TeacherSource teacher_source_from_string(const std::string& s);

struct RoundConfig {
    double target_rho = 0.15;
    std::optional<TierSpec> tiers;  // overrides PipelineConfig::tiers
    KDConfig kd;
};

struct WandaArm {
    bool enabled = true;
    double sparsity = 0.5;
    std::size_t calibration_samples = 64;
    KDConfig kd;
};

struct ProfileSettings {
    std::size_t batch = 8;
    std::size_t seq_len = 64;
    std::size_t repeats = 5;
};

struct PipelineConfig {
    ModelConfig model;
    TrainConfig train;
    TierSpec tiers;
    std::vector<RoundConfig> rounds;
    KDConfig dense_kd;  // Dense+KD control arm
    bool recache_each_round = false;
    TeacherSource teacher_source = TeacherSource::OriginalDense;
    bool teacher_swap_arm = true;  // final round re-distilled from the Dense+KD cache
    std::optional<double> oneshot_rho = 0.35;  // direct prune of the dense model, no KD
    WandaArm wanda;
    std::uint32_t cache_k = kDefaultTopK;
    std::size_t cache_seq_len = 64;
    EvalProtocol eval{64, 32, true, false};
    ProfileSettings profile;
    std::vector<std::uint64_t> seeds{42};
    std::filesystem::path pretrain_path, kd_path, validation_path, eval_path;
    std::filesystem::path output_dir = "runs";

    // Throws InvalidConfig (including non-increasing round targets).
    void validate() const;
};

// Relative paths inside the JSON resolve against `base_dir`. Throws
// InvalidConfig.
PipelineConfig pipeline_config_from_json(const std::string& text, const std::filesystem::path& base_dir = {});
std::string pipeline_config_to_json(const PipelineConfig& c);

// One evaluated model. Stages: "dense", "dense_kd", "oneshot", "round",
// "swap", "wanda".
struct RoundReport {
    std::string stage;
    std::size_t round = 0;  // 1-based for "round" and "swap", else 0
    std::uint64_t seed = 0;
    double rho = 0.0;
    double pre_kd_ppl = 0.0;
    double post_kd_ppl = 0.0;
    double dense_baseline_ppl = 0.0;
    double dense_kd_ppl = 0.0;
    double rel_vs_dense = 0.0;  // (post_kd - dense) / dense
    std::size_t kd_steps = 0;
    std::string teacher;  // provenance hash prefix of the cache used, "" if none

    friend bool operator==(const RoundReport&, const RoundReport&) = default;
};

double rel_vs_dense(double post_kd_ppl, double dense_ppl);

// Per-stage statistics across seeds.
struct StageSummary {
    std::string stage;
    std::size_t round = 0;
    std::size_t n = 0;
    double rho_mean = 0.0;
    double pre_kd_mean = 0.0;
    double post_kd_mean = 0.0;
    double post_kd_std = 0.0;  // sample standard deviation, 0 for n = 1
    double post_kd_cv = 0.0;
    double rel_vs_dense_mean = 0.0;
};

std::vector<StageSummary> summarize(const std::vector<RoundReport>& reports);

struct PipelineState {
    const PipelineConfig* config = nullptr;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> pretrain, kd, validation, eval;
    Model dense, dense_kd;
    double dense_ppl = 0.0, dense_kd_ppl = 0.0;
    ProbabilityCache cache;  // teacher cache for the next round
    Model current;           // model the next round prunes
    Model last_pruned;       // pre-KD model of the latest round
    std::filesystem::path dir;
    std::size_t rounds_done = 0;
};

// prune -> eval (pre-KD) -> distill -> eval (post-KD); persists the recovered
// checkpoint and advances state.current. Errors are rethrown with a stage tag.
RoundReport run_round(PipelineState& state, const RoundConfig& round);

struct TimingProfile {
    double attention_ms = 0.0;
    double ffn_ms = 0.0;
    double other_ms = 0.0;

    double total_ms() const noexcept { return attention_ms + ffn_ms + other_ms; }
    double attention_fraction() const noexcept { return attention_ms / total_ms(); }
    double ffn_fraction() const noexcept { return ffn_ms / total_ms(); }
    double other_fraction() const noexcept { return other_ms / total_ms(); }
};

// Instrumented forward passes over `batch` sequences of `seq_len` bytes; one
// warm-up repeat discarded, then the per-component median of `repeats`.
// Throws InvalidConfig for repeats < 3.
TimingProfile profile(const Model& model, std::size_t batch, std::size_t seq_len, std::size_t repeats = 5);

// 1 / (f + (1 - f) * s). Throws InvalidFraction outside f in [0,1], s in (0,1].
double amdahl_max_speedup(double fixed_fraction, double remaining_compute_factor);

struct PipelineResult {
    std::vector<RoundReport> reports;  // seed-major, stage order as run
    std::vector<StageSummary> summary;
    std::string timings_json;  // wall times and profiles; not deterministic
};

// Every seed end to end. Writes under output_dir:
//   seed_<s>/ checkpoints, caches, report.json
//   report.json, report.csv, summary.csv, timings.json
// Throws InvalidConfig if the eval stream coincides with any training input.
PipelineResult run_pipeline(const PipelineConfig& config);

// Hard failure when the evaluation file is also a training or calibration
// input (same path or identical contents).
void check_eval_disjoint(const PipelineConfig& config);

enum class ReportFormat { Csv, Json };

std::string reports_to_json(const std::vector<RoundReport>& reports);
std::vector<RoundReport> reports_from_json(const std::string& text);
std::string reports_to_csv(const std::vector<RoundReport>& reports);
std::string summary_to_csv(const std::vector<StageSummary>& summary);

// Throws InsufficientData for an empty list (nothing written), Io on failure.
void emit_report(const std::vector<RoundReport>& reports, ReportFormat format, const std::filesystem::path& path);

}  // namespace skd
