#include "oms/safeguard.hpp"

#include <cmath>
#include <stdexcept>

namespace oms {

double ResidualVector::max_abs() const {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

bool instability_indicator(double eta_j, double r_i) {
  if (!(eta_j > 0.0)) {
    throw std::invalid_argument("instability_indicator: eta must be positive");
  }
  return 32.0 * eta_j * std::abs(r_i) > 1.0;
}

PenaltyLedger::PenaltyLedger(int grid_size, ThresholdMode mode, double initial_threshold)
    : penalties_(static_cast<std::size_t>(grid_size), 0.0),
      ever_excluded_(static_cast<std::size_t>(grid_size), 0),
      mode_(mode) {
  if (grid_size < 1) {
    throw std::invalid_argument("PenaltyLedger: grid size must be positive");
  }
  if (mode_ == ThresholdMode::fixed) {
    threshold_ = 1.0;
  } else {
    if (!std::isfinite(initial_threshold)) {
      throw std::invalid_argument("PenaltyLedger: non-finite initial threshold");
    }
    threshold_ = initial_threshold;
  }
}

void PenaltyLedger::update_penalties(const WeightMatrix& weights,
                                     const ResidualVector& residual,
                                     const LearningRateGrid& grid) {
  if (weights.expert_ids != residual.expert_ids) {
    throw std::invalid_argument("update_penalties: expert ids do not match residual");
  }
  if (weights.cols != static_cast<int>(penalties_.size()) || grid.size() != weights.cols) {
    throw std::invalid_argument("update_penalties: grid size mismatch");
  }
  for (double v : residual.r) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("update_penalties: non-finite residual");
    }
  }
  for (int j = 0; j < weights.cols; ++j) {
    const double eta = grid.eta(j);
    double delta = 0.0;
    for (int i = 0; i < weights.rows; ++i) {
      const double ri = residual.r[static_cast<std::size_t>(i)];
      if (32.0 * eta * std::abs(ri) > 1.0) {
        delta += weights.at(i, j) * ri;
      }
    }
    penalties_[static_cast<std::size_t>(j)] += delta;
  }
}

ActiveSet PenaltyLedger::active_set() {
  const int m = static_cast<int>(penalties_.size());
  ActiveSet a = ActiveSet::none(m);
  for (int j = 0; j < m; ++j) {
    const bool over = penalties_[static_cast<std::size_t>(j)] > threshold_;
    if (over) ever_excluded_[static_cast<std::size_t>(j)] = 1;
    const bool excluded = permanent_ ? ever_excluded_[static_cast<std::size_t>(j)] != 0 : over;
    if (!excluded) a.insert(j);
  }
  return a;
}

void PenaltyLedger::update_threshold(const ResidualVector& residual) {
  if (mode_ != ThresholdMode::dynamic_threshold) return;
  threshold_ = std::max(threshold_, residual.max_abs());
}

}  // namespace oms
