#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace oms {

/// Geometric grid of candidate learning rates eta(j) = 2^(j+1) / (16 T)
/// for j = 0 .. size()-1 (0-based; the j-th entry is the (j+1)-th rate of
/// the doubling sequence). The default size ceil(log2 T^2) makes the grid
/// span Theta(1/T) up to Theta(T).
class LearningRateGrid {
 public:
  /// Builds the grid for the given horizon. Rejects T < 2 and
  /// size_override < 1.
  static LearningRateGrid build(std::int64_t horizon,
                                std::optional<int> size_override = std::nullopt);

  /// ceil(log2 T^2), the theoretically required grid size.
  static int theoretical_size(std::int64_t horizon);

  std::int64_t horizon() const { return horizon_; }
  int size() const { return static_cast<int>(eta_.size()); }
  double eta(int j) const { return eta_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& etas() const { return eta_; }

 private:
  std::int64_t horizon_ = 0;
  std::vector<double> eta_;
};

}  // namespace oms
