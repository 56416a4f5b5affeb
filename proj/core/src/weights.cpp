#include "oms/weights.hpp"

namespace oms {

WeightMatrix::WeightMatrix(std::vector<ExpertId> ids, int num_cols, double fill)
    : expert_ids(std::move(ids)),
      rows(static_cast<int>(expert_ids.size())),
      cols(num_cols),
      w(static_cast<std::size_t>(rows) * static_cast<std::size_t>(num_cols), fill) {}

double WeightMatrix::sum() const {
  double s = 0.0, c = 0.0;
  for (double v : w) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double WeightMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < cols; ++j) s += at(i, j);
  return s;
}

double WeightMatrix::col_sum(int j) const {
  double s = 0.0;
  for (int i = 0; i < rows; ++i) s += at(i, j);
  return s;
}

ActiveSet ActiveSet::all(int m) {
  ActiveSet a;
  a.member.assign(static_cast<std::size_t>(m), 1);
  return a;
}

ActiveSet ActiveSet::none(int m) {
  ActiveSet a;
  a.member.assign(static_cast<std::size_t>(m), 0);
  return a;
}

int ActiveSet::count() const {
  int n = 0;
  for (auto v : member) n += (v != 0);
  return n;
}

}  // namespace oms
