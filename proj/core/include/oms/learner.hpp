#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oms/grid.hpp"
#include "oms/safeguard.hpp"
#include "oms/simplex.hpp"
#include "oms/weights.hpp"

namespace oms {

enum class PoolMode { fixed_pool, dynamic_pool };

struct LearnerConfig {
  std::int64_t horizon = 0;
  /// Grid size; nullopt selects the theoretical ceil(log2 T^2).
  std::optional<int> grid_size = 40;
  double initial_threshold = 1.0;
  PoolMode pool = PoolMode::fixed_pool;
  /// Defaults to fixed for fixed pools and dynamic for dynamic pools.
  std::optional<ThresholdMode> threshold;
  bool safeguard_enabled = true;
  bool track_penalties = true;
  bool permanent_exclusion = false;
  /// Dynamic-pool floor is 1 / (64 W T^p); the pseudocode uses p = 2.
  double dynamic_floor_power = 2.0;

  ThresholdMode effective_threshold() const {
    if (threshold) return *threshold;
    return pool == PoolMode::fixed_pool ? ThresholdMode::fixed
                                        : ThresholdMode::dynamic_threshold;
  }
};

struct RoundOutput {
  int round = 0;
  std::vector<ExpertId> expert_ids;
  std::vector<double> prediction;
  WeightMatrix optimistic_weights;
  ActiveSet active;
  double max_active_eta = 0.0;
  double floor = 0.0;
  SolveStats optimistic_stats;
};

/// Feasibility summary of the loss-step solution, recomputed each round so
/// harnesses can assert the decision-set invariants without touching the
/// solver internals.
struct RoundAudit {
  double optimistic_sum_error = 0.0;
  double loss_step_sum_error = 0.0;
  double min_active_slack = 0.0;    // min over active coords of w - floor
  double max_inactive_error = 0.0;  // max over inactive coords of |w - floor|
};

/// Per-round driver: optimistic step, marginal prediction, loss step with
/// second-order correction, penalty and threshold updates, and the
/// weight-scaling bookkeeping for dynamic expert pools. begin_round and
/// end_round must alternate on one thread of control; instances are
/// independent and may be moved between threads.
class Learner {
 public:
  Learner(LearnerConfig config, const std::vector<ExpertId>& initial_experts);

  /// Optimistic step. experts_now must equal the initial set in fixed-pool
  /// mode; in dynamic mode unknown ids join as strictly new experts and a
  /// previously removed id is rejected. decision_prediction is the
  /// surrogate m' (the constant centering shift does not change the
  /// minimizer, so the full prediction is only needed at end_round).
  RoundOutput begin_round(const std::vector<ExpertId>& experts_now,
                          const std::vector<double>& decision_prediction);

  /// Loss step + bookkeeping. full_prediction is the completed m_t used
  /// for residuals, the correction term, penalties, and the dynamic
  /// threshold. Rejects non-finite losses.
  void end_round(const std::vector<double>& observed_loss,
                 const std::vector<double>& full_prediction, const RoundOutput& out);

  /// Drops expert rows permanently (dynamic pools only). The ids may never
  /// be reintroduced; removing every expert is rejected.
  void remove_experts(const std::vector<ExpertId>& ids);

  const LearningRateGrid& grid() const { return grid_; }
  const PenaltyLedger& ledger() const { return ledger_; }
  const WeightMatrix& pre_weights() const { return stored_; }
  const LearnerConfig& config() const { return config_; }
  double total_weight() const { return total_weight_; }
  double floor_eps() const { return floor_; }
  int round() const { return round_; }
  int pool_size() const { return stored_.rows; }
  const RoundAudit& last_audit() const { return audit_; }

  int warning_count() const { return warning_count_; }
  const std::string& last_warning() const { return last_warning_; }

 private:
  void warn(const std::string& message);
  double current_total_weight(const std::vector<int>& rows) const;

  LearnerConfig config_;
  LearningRateGrid grid_;
  PenaltyLedger ledger_;
  WeightMatrix stored_;  // w' rows for every known, not-removed expert
  std::unordered_map<ExpertId, int> row_of_;
  std::unordered_set<ExpertId> removed_;
  std::vector<int> cur_rows_;  // stored-row index per current expert
  OmdProblem work_;            // prior/cost/active for the in-flight round
  double total_weight_ = 1.0;  // W_t over the current set (1 in fixed mode)
  double last_total_weight_ = 0.0;
  double floor_ = 0.0;
  int round_ = 1;
  bool awaiting_end_ = false;
  RoundAudit audit_;
  int warning_count_ = 0;
  std::string last_warning_;
};

}  // namespace oms
