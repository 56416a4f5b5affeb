#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oms/environments.hpp"
#include "oms/metrics.hpp"
#include "oms/variants.hpp"

namespace oms {

/// Benchmark configuration. CLI flags map onto these fields one-to-one;
/// a flat key=value config file mirrors the flags (CLI overrides file
/// overrides defaults). The worker pool is capped by the OMS_THREADS
/// environment variable.
struct RunConfig {
  Scenario scenario = Scenario::abrupt;
  std::vector<Variant> variants = {Variant::proposed};
  int trials = 50;
  std::int64_t horizon = 400;
  int experts = 100;
  std::optional<int> m_override;  // grid size; unset keeps the default 40
  std::uint64_t seed_base = 0;
  std::string out_path;
  bool dynamic_pool = false;
  bool timing = true;
  PoolSchedule schedule;
  /// Loss-clipping wrapper scales; nonpositive values default to the
  /// horizon (B0 = T, R = T).
  double clip_initial = 0.0;
  double clip_rate = 0.0;
  double ema_step = 0.5;
  bool debug_telemetry = false;
  int drift_period = 100;
  double drift_rate = 1.0;
  double corruption_prob = 0.1;
  double noise_std = 0.0;
};

/// One (variant, trial) execution plus the invariant counters the
/// acceptance criteria treat as hard assertions (feasibility of every
/// round's weights, penalty boundedness, dynamic-pool bookkeeping).
struct TrialResult {
  Variant variant = Variant::proposed;
  int trial = 0;
  std::vector<RoundRecord> rounds;
  double final_cum_loss = 0.0;
  double final_regret = 0.0;
  double max_abs_residual = 0.0;  // max_t ||loss - m||_inf seen by the learner
  std::vector<double> final_penalties;
  double final_threshold = 1.0;
  int restarts = 0;
  int learner_warnings = 0;
  double mean_round_us = 0.0;

  int feasibility_violations = 0;
  int penalty_bound_violations = 0;
  int weight_monotonicity_violations = 0;
  int pool_limit_violations = 0;
  int id_reuse_violations = 0;

  long total_violations() const {
    return feasibility_violations + penalty_bound_violations +
           weight_monotonicity_violations + pool_limit_violations +
           id_reuse_violations;
  }
};

struct RunResult {
  std::vector<std::vector<TrialResult>> by_variant;  // indexed like cfg.variants
  long total_violations() const;
};

/// Runs one trial against a prebuilt stream (the replay path uses an
/// imported stream; run_benchmark builds one per trial).
TrialResult run_single_trial(const RunConfig& cfg, Variant variant, int trial,
                             const DriftTrajectory& traj);

/// Full benchmark: variants x trials, trial-parallel. Results are
/// deterministic and independent of the worker-pool size.
RunResult run_benchmark(const RunConfig& cfg);

/// Round rows followed by one summary row per variant. Summary rows carry
/// trial = -1 and round = -1 and reuse the columns as follows:
/// inst_loss = mean cumulative loss / T, cum_loss = mean final cumulative
/// loss, best_inst_loss = standard error of the final cumulative loss,
/// regret = mean final regret, max_active_eta = mean final value,
/// num_active = trial count, sum_penalty = mean final value, elapsed_us =
/// mean per-round microseconds.
extern const char* const kCsvHeader;
void write_csv(const RunConfig& cfg, const RunResult& result, std::ostream& out);

/// run subcommand: benchmark + atomic CSV write (temp file then rename).
/// Returns a process exit status.
int run_command(const RunConfig& cfg);

struct SweepRow {
  std::string scenario;
  int grid_size = 0;
  int trials = 0;
  double mean_cum_loss = 0.0;
  double stddev_cum_loss = 0.0;
};

/// Grid-size sensitivity sweep of cfg.variants.front() (one summary row
/// per grid size per scenario).
std::vector<SweepRow> run_m_sweep(RunConfig base, const std::vector<int>& m_values,
                                  const std::vector<Scenario>& scenarios);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
int sweep_command(const RunConfig& cfg, const std::vector<int>& m_values,
                  const std::vector<Scenario>& scenarios);

struct ScalingRow {
  std::string variant;
  int experts = 0;
  int rounds = 0;
  double mean_us = 0.0;
  double median_us = 0.0;
};

/// Per-round wall-clock scaling over expert-pool sizes at a fixed grid
/// size; the first `warmup` rounds of every trial are excluded.
std::vector<ScalingRow> run_scaling_bench(RunConfig base, const std::vector<int>& k_values,
                                          int fixed_m, int warmup = 10);
void write_scaling_csv(const std::vector<ScalingRow>& rows, std::ostream& out);
int scaling_command(const RunConfig& cfg, const std::vector<int>& k_values, int fixed_m);

/// replay subcommand: runs every configured variant once over an exported
/// stream file.
int replay_command(const RunConfig& cfg, const std::string& stream_path);

}  // namespace oms
