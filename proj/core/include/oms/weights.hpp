#pragma once

#include <cstdint>
#include <vector>

namespace oms {

using ExpertId = std::int64_t;

/// Dense nonnegative weight grid over (expert row x learning-rate column).
/// Rows are labelled with expert ids; storage is row-major.
struct WeightMatrix {
  std::vector<ExpertId> expert_ids;
  int rows = 0;
  int cols = 0;
  std::vector<double> w;

  WeightMatrix() = default;
  WeightMatrix(std::vector<ExpertId> ids, int num_cols, double fill = 0.0);

  double& at(int i, int j) {
    return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(j)];
  }
  double at(int i, int j) const {
    return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(j)];
  }

  /// Compensated total, stable enough for the 1e-9 distribution checks.
  double sum() const;

  /// Marginal mass of one row / one column.
  double row_sum(int i) const;
  double col_sum(int j) const;
};

/// Subset of grid column indices (0-based) allowed to carry free weight.
struct ActiveSet {
  std::vector<std::uint8_t> member;

  static ActiveSet all(int m);
  static ActiveSet none(int m);

  int size() const { return static_cast<int>(member.size()); }
  bool contains(int j) const { return member[static_cast<std::size_t>(j)] != 0; }
  void insert(int j) { member[static_cast<std::size_t>(j)] = 1; }
  void erase(int j) { member[static_cast<std::size_t>(j)] = 0; }
  int count() const;
  bool empty() const { return count() == 0; }
};

}  // namespace oms
