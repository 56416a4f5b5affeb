#pragma once

#include <vector>

#include "oms/grid.hpp"
#include "oms/weights.hpp"

namespace oms {

enum class ThresholdMode { fixed, dynamic_threshold };

/// Per-expert prediction errors r(i) = loss(i) - m(i), aligned with ids.
struct ResidualVector {
  std::vector<ExpertId> expert_ids;
  std::vector<double> r;

  double max_abs() const;
};

/// True when a weight update at rate eta_j is outside the stable regime,
/// i.e. 32 * eta_j * |r_i| > 1 (strict).
bool instability_indicator(double eta_j, double r_i);

/// Cumulative penalty per learning-rate index plus the exclusion
/// threshold. Penalties may drift negative; in fixed mode the threshold
/// is pinned at one, in dynamic mode it ratchets up with the largest
/// observed prediction error.
class PenaltyLedger {
 public:
  PenaltyLedger(int grid_size, ThresholdMode mode, double initial_threshold = 1.0);

  /// Adds sum_i 1[32 eta(j) |r(i)| > 1] * w(i,j) * r(i) to every L(j),
  /// including currently excluded indices whose weights sit at the floor.
  /// The weights are the post-optimistic-step distribution of the round.
  /// Rejects a weight matrix whose expert ids do not match the residual's.
  void update_penalties(const WeightMatrix& weights, const ResidualVector& residual,
                        const LearningRateGrid& grid);

  /// { j : L(j) <= U }. With permanent exclusion enabled, an index that
  /// was ever excluded stays excluded.
  ActiveSet active_set();

  /// U <- max(U, ||r||_inf). No-op in fixed mode.
  void update_threshold(const ResidualVector& residual);

  const std::vector<double>& penalties() const { return penalties_; }
  double threshold() const { return threshold_; }
  ThresholdMode mode() const { return mode_; }
  void set_permanent_exclusion(bool on) { permanent_ = on; }
  bool permanent_exclusion() const { return permanent_; }

 private:
  std::vector<double> penalties_;
  std::vector<std::uint8_t> ever_excluded_;
  double threshold_ = 1.0;
  ThresholdMode mode_ = ThresholdMode::fixed;
  bool permanent_ = false;
};

}  // namespace oms
