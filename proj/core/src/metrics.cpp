#include "oms/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace oms {

std::vector<int> segment_comparators(const std::vector<std::vector<double>>& losses,
                                     const Segments& segments) {
  const int t_max = static_cast<int>(losses.size());
  if (segments.empty()) {
    throw std::invalid_argument("segment_comparators: empty partition");
  }
  int expect = 1;
  for (const auto& [first, last] : segments) {
    if (first != expect || last < first || last > t_max) {
      throw std::invalid_argument("segment_comparators: ranges must partition [1, T]");
    }
    expect = last + 1;
  }
  if (expect != t_max + 1) {
    throw std::invalid_argument("segment_comparators: partition does not cover [1, T]");
  }

  std::vector<int> best;
  best.reserve(segments.size());
  for (const auto& [first, last] : segments) {
    const int k = static_cast<int>(losses[static_cast<std::size_t>(first - 1)].size());
    int arg = 0;
    double best_sum = 0.0;
    for (int i = 0; i < k; ++i) {
      double s = 0.0;
      for (int t = first; t <= last; ++t) {
        s += losses[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(i)];
      }
      if (i == 0 || s < best_sum) {
        best_sum = s;
        arg = i;
      }
    }
    best.push_back(arg);
  }
  return best;
}

double dynamic_regret(const std::vector<std::vector<double>>& losses,
                      const std::vector<std::vector<double>>& predictions,
                      const std::vector<int>& comparator) {
  if (losses.size() != predictions.size() || losses.size() != comparator.size()) {
    throw std::invalid_argument("dynamic_regret: length mismatch");
  }
  double regret = 0.0;
  for (std::size_t t = 0; t < losses.size(); ++t) {
    const auto& l = losses[t];
    const auto& p = predictions[t];
    if (l.size() != p.size()) {
      throw std::invalid_argument("dynamic_regret: round size mismatch");
    }
    double learner = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) learner += l[i] * p[i];
    regret += learner - l[static_cast<std::size_t>(comparator[t])];
  }
  return regret;
}

double path_length(const std::vector<std::vector<double>>& comparators) {
  double total = 0.0;
  std::vector<double> prev;
  for (const auto& u : comparators) {
    if (prev.empty()) {
      for (double v : u) total += std::abs(v);
    } else {
      if (prev.size() != u.size()) {
        throw std::invalid_argument("path_length: dimension change");
      }
      for (std::size_t i = 0; i < u.size(); ++i) total += std::abs(u[i] - prev[i]);
    }
    prev = u;
  }
  return total;
}

double path_length(const std::vector<int>& comparator, int) {
  if (comparator.empty()) return 0.0;
  double total = 1.0;  // u_0 = 0 -> first point mass moves mass one
  for (std::size_t t = 1; t < comparator.size(); ++t) {
    if (comparator[t] != comparator[t - 1]) total += 2.0;
  }
  return total;
}

int adaptation_lag(const std::vector<double>& inst_loss,
                   const std::vector<double>& best_inst_loss, int drift_round,
                   double delta, int window) {
  const int t_max = static_cast<int>(inst_loss.size());
  if (best_inst_loss.size() != inst_loss.size()) {
    throw std::invalid_argument("adaptation_lag: length mismatch");
  }
  if (drift_round < 1 || drift_round > t_max) {
    throw std::invalid_argument("adaptation_lag: drift round outside horizon");
  }
  if (window < 1) {
    throw std::invalid_argument("adaptation_lag: window must be positive");
  }
  const int remainder = t_max - drift_round + 1;
  for (int d = 0; drift_round + d + window - 1 <= t_max; ++d) {
    bool ok = true;
    for (int t = drift_round + d; t < drift_round + d + window; ++t) {
      if (inst_loss[static_cast<std::size_t>(t - 1)] >
          best_inst_loss[static_cast<std::size_t>(t - 1)] + delta) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  return remainder;
}

}  // namespace oms
