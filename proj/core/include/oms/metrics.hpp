#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oms {

/// Per-round telemetry row; the CSV schema in harness.hpp mirrors the
/// first twelve fields. The optional debug extras are in-memory only.
struct RoundRecord {
  int trial = 0;
  int round = 0;
  std::string variant;
  std::string scenario;
  double inst_loss = 0.0;
  double cum_loss = 0.0;
  double best_inst_loss = 0.0;
  double regret = 0.0;  // cumulative vs the per-round best expert
  double max_active_eta = 0.0;
  int num_active = 0;
  double sum_penalty = 0.0;
  std::int64_t elapsed_us = 0;

  // populated only when debug telemetry is enabled
  std::vector<double> penalty_snapshot;
  std::vector<std::uint8_t> active_mask;
};

/// [first, last] round ranges (1-based, inclusive) partitioning [1, T].
using Segments = std::vector<std::pair<int, int>>;

/// Best expert per segment by exhaustive scan of summed losses; ties go to
/// the lowest expert index. Rejects ranges that do not partition [1, T].
std::vector<int> segment_comparators(const std::vector<std::vector<double>>& losses,
                                     const Segments& segments);

/// sum_t (<loss_t, p_t> - loss_t(u_t)) for a per-round point-mass
/// comparator sequence.
double dynamic_regret(const std::vector<std::vector<double>>& losses,
                      const std::vector<std::vector<double>>& predictions,
                      const std::vector<int>& comparator);

/// sum_t ||u_t - u_{t-1}||_1 with u_0 = 0.
double path_length(const std::vector<std::vector<double>>& comparators);
/// Same for point masses: 1 + 2 * (number of switches).
double path_length(const std::vector<int>& comparator, int num_experts);

/// Smallest d >= 0 such that inst(t) <= best(t) + delta for every round in
/// [drift_round + d, drift_round + d + window); returns the horizon
/// remainder T - drift_round + 1 when no such window exists.
int adaptation_lag(const std::vector<double>& inst_loss,
                   const std::vector<double>& best_inst_loss, int drift_round,
                   double delta, int window);

}  // namespace oms
