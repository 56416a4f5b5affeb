#include "oms/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace oms {

int LearningRateGrid::theoretical_size(std::int64_t horizon) {
  return static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(horizon))));
}

LearningRateGrid LearningRateGrid::build(std::int64_t horizon,
                                         std::optional<int> size_override) {
  if (horizon < 2) {
    throw std::invalid_argument("LearningRateGrid: horizon must be >= 2");
  }
  if (size_override && *size_override < 1) {
    throw std::invalid_argument("LearningRateGrid: size override must be >= 1");
  }
  const int m = size_override ? *size_override : theoretical_size(horizon);

  LearningRateGrid grid;
  grid.horizon_ = horizon;
  grid.eta_.resize(static_cast<std::size_t>(m));
  const double denom = 16.0 * static_cast<double>(horizon);
  for (int j = 0; j < m; ++j) {
    grid.eta_[static_cast<std::size_t>(j)] = std::ldexp(1.0, j + 1) / denom;
  }
  return grid;
}

}  // namespace oms
