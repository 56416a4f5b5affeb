#include "oms/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oms {

namespace {

constexpr double kStoredFloor = 1e-300;  // log-domain underflow guard
constexpr double kPriorFloor = 1e-320;

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string("Learner: non-finite ") + what);
    }
  }
}

}  // namespace

Learner::Learner(LearnerConfig config, const std::vector<ExpertId>& initial_experts)
    : config_(config),
      grid_(LearningRateGrid::build(config.horizon, config.grid_size)),
      ledger_(grid_.size(), config.effective_threshold(), config.initial_threshold) {
  if (initial_experts.empty()) {
    throw std::invalid_argument("Learner: at least one expert required");
  }
  if (config_.effective_threshold() == ThresholdMode::fixed &&
      config_.initial_threshold != 1.0) {
    throw std::invalid_argument("Learner: fixed threshold mode pins U = 1");
  }
  ledger_.set_permanent_exclusion(config_.permanent_exclusion);

  const int m = grid_.size();
  stored_ = WeightMatrix(initial_experts, m, 0.0);
  for (int i = 0; i < stored_.rows; ++i) {
    if (!row_of_.emplace(initial_experts[static_cast<std::size_t>(i)], i).second) {
      throw std::invalid_argument("Learner: duplicate expert id");
    }
  }

  double eta_sq_sum = 0.0;
  for (int j = 0; j < m; ++j) eta_sq_sum += grid_.eta(j) * grid_.eta(j);
  for (int i = 0; i < stored_.rows; ++i) {
    for (int j = 0; j < m; ++j) {
      stored_.at(i, j) = grid_.eta(j) * grid_.eta(j);
    }
  }

  const double t = static_cast<double>(config_.horizon);
  if (config_.pool == PoolMode::fixed_pool) {
    const double norm = static_cast<double>(stored_.rows) * eta_sq_sum;
    for (double& v : stored_.w) v /= norm;
    floor_ = 1.0 / (static_cast<double>(stored_.rows) * m * t * t * t);
    total_weight_ = 1.0;
  } else {
    total_weight_ = static_cast<double>(stored_.rows) * eta_sq_sum;
  }
}

void Learner::warn(const std::string& message) {
  ++warning_count_;
  last_warning_ = message;
}

double Learner::current_total_weight(const std::vector<int>& rows) const {
  double s = 0.0, c = 0.0;
  for (int r : rows) {
    for (int j = 0; j < stored_.cols; ++j) {
      const double y = stored_.at(r, j) - c;
      const double t = s + y;
      c = (t - s) - y;
      s = t;
    }
  }
  return s;
}

RoundOutput Learner::begin_round(const std::vector<ExpertId>& experts_now,
                                 const std::vector<double>& decision_prediction) {
  if (awaiting_end_) {
    throw std::logic_error("Learner: end_round missing for previous round");
  }
  if (experts_now.empty()) {
    throw std::invalid_argument("Learner: empty expert set");
  }
  if (decision_prediction.size() != experts_now.size()) {
    throw std::invalid_argument("Learner: prediction size mismatch");
  }
  check_finite(decision_prediction, "prediction");

  const int m = grid_.size();
  if (config_.pool == PoolMode::fixed_pool) {
    if (experts_now != stored_.expert_ids) {
      throw std::invalid_argument("Learner: fixed pool cannot change experts");
    }
    cur_rows_.resize(static_cast<std::size_t>(stored_.rows));
    for (int i = 0; i < stored_.rows; ++i) cur_rows_[static_cast<std::size_t>(i)] = i;
  } else {
    std::unordered_set<ExpertId> seen;
    for (ExpertId id : experts_now) {
      if (!seen.insert(id).second) {
        throw std::invalid_argument("Learner: duplicate expert id in round");
      }
      if (removed_.count(id)) {
        throw std::invalid_argument(
            "Learner: removed expert id reappeared; mint a fresh id");
      }
      if (!row_of_.count(id)) {
        const int row = stored_.rows;
        stored_.expert_ids.push_back(id);
        stored_.rows = row + 1;
        for (int j = 0; j < m; ++j) {
          stored_.w.push_back(grid_.eta(j) * grid_.eta(j));
        }
        row_of_.emplace(id, row);
      }
    }
    cur_rows_.resize(experts_now.size());
    for (std::size_t k = 0; k < experts_now.size(); ++k) {
      cur_rows_[k] = row_of_.at(experts_now[k]);
    }
    const double w_now = current_total_weight(cur_rows_);
    if (last_total_weight_ > 0.0 && w_now < last_total_weight_ * (1.0 - 1e-12)) {
      warn("total weight decreased; pruning removed non-negligible mass");
    }
    total_weight_ = w_now;
    const double t = static_cast<double>(config_.horizon);
    floor_ = 1.0 / (64.0 * total_weight_ * std::pow(t, config_.dynamic_floor_power));
  }

  const int k = static_cast<int>(experts_now.size());
  work_.prior = WeightMatrix(experts_now, m, 0.0);
  const double inv_w = 1.0 / total_weight_;
  for (int i = 0; i < k; ++i) {
    const int row = cur_rows_[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      work_.prior.at(i, j) = std::max(stored_.at(row, j) * inv_w, kPriorFloor);
    }
  }
  work_.grid = grid_;
  work_.floor = floor_;

  ActiveSet active = config_.safeguard_enabled ? ledger_.active_set() : ActiveSet::all(m);
  if (active.empty()) {
    active.insert(0);
    warn("active set empty; keeping the smallest learning rate");
  }
  work_.active = active;

  work_.cost.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < k; ++i) {
    const double mi = decision_prediction[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      work_.cost[static_cast<std::size_t>(i) * m + j] = mi;
    }
  }

  RoundOutput out;
  out.round = round_;
  out.expert_ids = experts_now;
  out.floor = floor_;
  out.active = active;
  out.optimistic_weights = solve_truncated_omd(work_, &out.optimistic_stats);
  if (out.optimistic_stats.fell_back_to_first_column) {
    warn("solver fell back to the smallest learning rate");
  }

  for (int j = m - 1; j >= 0; --j) {
    if (active.contains(j)) {
      out.max_active_eta = grid_.eta(j);
      break;
    }
  }

  out.prediction.assign(static_cast<std::size_t>(k), 0.0);
  double mass = 0.0;
  for (int i = 0; i < k; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      if (active.contains(j)) s += out.optimistic_weights.at(i, j);
    }
    out.prediction[static_cast<std::size_t>(i)] = s;
    mass += s;
  }
  for (double& p : out.prediction) p /= mass;

  audit_.optimistic_sum_error = std::abs(out.optimistic_weights.sum() - 1.0);
  awaiting_end_ = true;
  return out;
}

void Learner::end_round(const std::vector<double>& observed_loss,
                        const std::vector<double>& full_prediction,
                        const RoundOutput& out) {
  if (!awaiting_end_) {
    throw std::logic_error("Learner: begin_round must come first");
  }
  const int k = static_cast<int>(cur_rows_.size());
  if (static_cast<int>(observed_loss.size()) != k ||
      static_cast<int>(full_prediction.size()) != k) {
    throw std::invalid_argument("Learner: loss/prediction size mismatch");
  }
  if (out.round != round_ || out.expert_ids != work_.prior.expert_ids) {
    throw std::invalid_argument("Learner: round output does not match in-flight round");
  }
  check_finite(observed_loss, "loss");
  check_finite(full_prediction, "full prediction");

  const int m = grid_.size();
  ResidualVector residual;
  residual.expert_ids = out.expert_ids;
  residual.r.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    residual.r[static_cast<std::size_t>(i)] =
        observed_loss[static_cast<std::size_t>(i)] - full_prediction[static_cast<std::size_t>(i)];
  }

  for (int i = 0; i < k; ++i) {
    const double li = observed_loss[static_cast<std::size_t>(i)];
    const double ri = residual.r[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      work_.cost[static_cast<std::size_t>(i) * m + j] = li + 32.0 * grid_.eta(j) * ri * ri;
    }
  }
  const WeightMatrix next = solve_truncated_omd(work_);

  audit_.loss_step_sum_error = std::abs(next.sum() - 1.0);
  audit_.min_active_slack = std::numeric_limits<double>::infinity();
  audit_.max_inactive_error = 0.0;
  for (int j = 0; j < m; ++j) {
    const bool act = work_.active.contains(j);
    for (int i = 0; i < k; ++i) {
      if (act) {
        audit_.min_active_slack =
            std::min(audit_.min_active_slack, next.at(i, j) - floor_);
      } else {
        audit_.max_inactive_error =
            std::max(audit_.max_inactive_error, std::abs(next.at(i, j) - floor_));
      }
    }
  }

  const double scale = config_.pool == PoolMode::fixed_pool ? 1.0 : total_weight_;
  for (int i = 0; i < k; ++i) {
    const int row = cur_rows_[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      stored_.at(row, j) = std::max(next.at(i, j) * scale, kStoredFloor);
    }
  }

  if (config_.track_penalties) {
    ledger_.update_penalties(out.optimistic_weights, residual, grid_);
  }
  ledger_.update_threshold(residual);

  last_total_weight_ = total_weight_;
  ++round_;
  awaiting_end_ = false;
}

void Learner::remove_experts(const std::vector<ExpertId>& ids) {
  if (config_.pool != PoolMode::dynamic_pool) {
    throw std::logic_error("Learner: remove_experts requires a dynamic pool");
  }
  if (awaiting_end_) {
    throw std::logic_error("Learner: cannot remove experts mid-round");
  }
  if (ids.empty()) return;
  std::unordered_set<ExpertId> drop;
  for (ExpertId id : ids) {
    if (!row_of_.count(id)) {
      throw std::invalid_argument("Learner: unknown expert id in removal");
    }
    drop.insert(id);
  }
  if (static_cast<int>(drop.size()) >= stored_.rows) {
    throw std::invalid_argument("Learner: cannot remove every expert");
  }

  WeightMatrix compact;
  compact.cols = stored_.cols;
  for (int i = 0; i < stored_.rows; ++i) {
    const ExpertId id = stored_.expert_ids[static_cast<std::size_t>(i)];
    if (drop.count(id)) continue;
    compact.expert_ids.push_back(id);
    for (int j = 0; j < stored_.cols; ++j) compact.w.push_back(stored_.at(i, j));
  }
  compact.rows = static_cast<int>(compact.expert_ids.size());

  stored_ = std::move(compact);
  row_of_.clear();
  for (int i = 0; i < stored_.rows; ++i) {
    row_of_.emplace(stored_.expert_ids[static_cast<std::size_t>(i)], i);
  }
  for (ExpertId id : drop) removed_.insert(id);
}

}  // namespace oms
