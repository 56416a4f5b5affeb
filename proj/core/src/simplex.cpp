#include "oms/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oms {

namespace {

constexpr double kExpCap = 690.0;      // keeps sums of per-coordinate masses finite
constexpr double kGapTol = 1e-12;      // |g(lambda)| termination
constexpr double kWidthTol = 1e-14;    // bracket-width termination
constexpr int kMaxBisection = 200;
constexpr int kMaxExpansions = 120;

// Active coordinates flattened for the root search. base = ln prior - eta*cost,
// so the unconstrained weight at multiplier lambda is exp(base + eta*lambda).
struct Packed {
  std::vector<double> base;
  std::vector<double> eta;
  double floor = 0.0;
  double ln_floor = 0.0;
  double pinned_mass = 0.0;  // floor * #inactive coordinates
  double min_cost = 0.0;
  double max_cost = 0.0;
};

void validate(const OmdProblem& p) {
  const int rows = p.prior.rows;
  const int cols = p.prior.cols;
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("solve_truncated_omd: empty problem");
  }
  if (static_cast<int>(p.cost.size()) != rows * cols) {
    throw std::invalid_argument("solve_truncated_omd: cost shape mismatch");
  }
  if (p.active.size() != cols) {
    throw std::invalid_argument("solve_truncated_omd: active-set size mismatch");
  }
  if (p.grid.size() != cols) {
    throw std::invalid_argument("solve_truncated_omd: grid size mismatch");
  }
  if (!(p.floor > 0.0) ||
      !(p.floor * static_cast<double>(rows) * static_cast<double>(cols) < 1.0)) {
    throw std::invalid_argument("solve_truncated_omd: infeasible floor");
  }
  for (double v : p.prior.w) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("solve_truncated_omd: prior entries must be positive");
    }
  }
  for (double v : p.cost) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("solve_truncated_omd: non-finite cost");
    }
  }
}

Packed pack(const OmdProblem& p, const ActiveSet& active) {
  Packed pk;
  pk.floor = p.floor;
  pk.ln_floor = std::log(p.floor);
  pk.min_cost = std::numeric_limits<double>::infinity();
  pk.max_cost = -std::numeric_limits<double>::infinity();
  const int rows = p.prior.rows;
  const int cols = p.prior.cols;
  pk.base.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  pk.eta.reserve(pk.base.capacity());
  for (int j = 0; j < cols; ++j) {
    if (!active.contains(j)) {
      pk.pinned_mass += p.floor * rows;
      continue;
    }
    const double eta = p.grid.eta(j);
    for (int i = 0; i < rows; ++i) {
      const double c = p.cost_at(i, j);
      pk.base.push_back(std::log(p.prior.at(i, j)) - eta * c);
      pk.eta.push_back(eta);
      pk.min_cost = std::min(pk.min_cost, c);
      pk.max_cost = std::max(pk.max_cost, c);
    }
  }
  return pk;
}

double mass_at(const Packed& pk, double lambda) {
  double s = pk.pinned_mass;
  const std::size_t n = pk.base.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double e = pk.base[k] + pk.eta[k] * lambda;
    if (e <= pk.ln_floor) {
      s += pk.floor;
    } else {
      double w = std::exp(std::min(e, kExpCap));
      if (w < pk.floor) w = pk.floor;
      s += w;
    }
  }
  return s;
}

}  // namespace

double negentropy_potential(const WeightMatrix& w, const LearningRateGrid& grid) {
  if (w.cols != grid.size()) {
    throw std::invalid_argument("negentropy_potential: grid size mismatch");
  }
  double s = 0.0;
  for (int j = 0; j < w.cols; ++j) {
    const double inv_eta = 1.0 / grid.eta(j);
    for (int i = 0; i < w.rows; ++i) {
      const double v = w.at(i, j);
      if (!(v > 0.0)) {
        throw std::invalid_argument("negentropy_potential: entries must be positive");
      }
      s += inv_eta * v * std::log(v);
    }
  }
  return s;
}

double bregman_divergence(const WeightMatrix& y, const WeightMatrix& x,
                          const LearningRateGrid& grid) {
  if (y.rows != x.rows || y.cols != x.cols) {
    throw std::invalid_argument("bregman_divergence: shape mismatch");
  }
  if (x.cols != grid.size()) {
    throw std::invalid_argument("bregman_divergence: grid size mismatch");
  }
  double s = 0.0;
  for (int j = 0; j < x.cols; ++j) {
    const double inv_eta = 1.0 / grid.eta(j);
    for (int i = 0; i < x.rows; ++i) {
      const double xi = x.at(i, j);
      if (!(xi > 0.0)) {
        throw std::invalid_argument("bregman_divergence: reference entries must be positive");
      }
      const double yi = y.at(i, j);
      if (yi < 0.0) {
        throw std::invalid_argument("bregman_divergence: negative entry");
      }
      if (yi == 0.0) {
        s += inv_eta * xi;
      } else {
        s += inv_eta * (yi * std::log(yi / xi) - yi + xi);
      }
    }
  }
  return s;
}

double truncated_mass(const OmdProblem& problem, double lambda) {
  validate(problem);
  ActiveSet active = problem.active;
  if (active.empty()) active.insert(0);
  const Packed pk = pack(problem, active);
  return mass_at(pk, lambda);
}

WeightMatrix solve_truncated_omd(const OmdProblem& problem, SolveStats* stats) {
  validate(problem);

  ActiveSet active = problem.active;
  bool fallback = false;
  if (active.empty()) {
    // All-inactive cannot satisfy the mass constraint; keep the smallest
    // rate available instead of failing.
    active.insert(0);
    fallback = true;
  }

  const Packed pk = pack(problem, active);
  SolveStats st;
  st.fell_back_to_first_column = fallback;

  // Initial bracket around the cost range, then doubled outward until the
  // mass gap changes sign.
  const double slack = std::log(1.0 / problem.floor) / problem.grid.eta(0);
  double lo = pk.min_cost - slack;
  double hi = pk.max_cost + slack;
  if (!(hi > lo)) hi = lo + 1.0;

  double g_lo = mass_at(pk, lo) - 1.0;
  double g_hi = mass_at(pk, hi) - 1.0;
  int expansions = 0;
  while (g_lo > 0.0) {
    if (++expansions > kMaxExpansions) {
      throw SolveError("solve_truncated_omd: cannot bracket multiplier from below");
    }
    const double width = hi - lo;
    lo -= width;
    g_lo = mass_at(pk, lo) - 1.0;
  }
  while (g_hi < 0.0) {
    if (++expansions > kMaxExpansions) {
      throw SolveError("solve_truncated_omd: cannot bracket multiplier from above");
    }
    const double width = hi - lo;
    hi += width;
    g_hi = mass_at(pk, hi) - 1.0;
  }
  st.bracket_expansions = expansions;

  double lambda = 0.5 * (lo + hi);
  double gap = mass_at(pk, lambda) - 1.0;
  int steps = 1;
  while (std::abs(gap) > kGapTol && (hi - lo) > kWidthTol && steps < kMaxBisection) {
    if (gap > 0.0) {
      hi = lambda;
    } else {
      lo = lambda;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // no representable midpoint left
    lambda = mid;
    gap = mass_at(pk, lambda) - 1.0;
    ++steps;
  }
  st.bisection_steps = steps;
  st.lambda = lambda;
  st.final_gap = std::abs(gap);
  st.bracket_width = hi - lo;

  // Materialize the solution, pin floored coordinates exactly, and rescale
  // the free mass so the total is one.
  WeightMatrix out(problem.prior.expert_ids, problem.prior.cols, 0.0);
  const int rows = out.rows;
  const int cols = out.cols;
  std::vector<std::uint8_t> free_coord(
      static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  int pinned = 0;
  for (int j = 0; j < cols; ++j) {
    const bool act = active.contains(j);
    const double eta = problem.grid.eta(j);
    for (int i = 0; i < rows; ++i) {
      const std::size_t idx = static_cast<std::size_t>(i) * cols + j;
      if (!act) {
        out.at(i, j) = problem.floor;
        ++pinned;
        continue;
      }
      const double e = std::log(problem.prior.at(i, j)) + eta * (lambda - problem.cost_at(i, j));
      if (e <= std::log(problem.floor)) {
        out.at(i, j) = problem.floor;
        ++pinned;
      } else {
        out.at(i, j) = std::exp(std::min(e, kExpCap));
        free_coord[idx] = 1;
      }
    }
  }

  const double target_free = 1.0 - problem.floor * static_cast<double>(pinned);
  double free_sum = 0.0, comp = 0.0;
  for (std::size_t idx = 0; idx < free_coord.size(); ++idx) {
    if (!free_coord[idx]) continue;
    const double y = out.w[idx] - comp;
    const double t = free_sum + y;
    comp = (t - free_sum) - y;
    free_sum = t;
  }
  if (!(free_sum > 0.0) || !std::isfinite(free_sum)) {
    throw SolveError("solve_truncated_omd: degenerate free mass at root");
  }
  const double scale = target_free / free_sum;
  for (std::size_t idx = 0; idx < free_coord.size(); ++idx) {
    if (free_coord[idx]) out.w[idx] *= scale;
  }

  if (stats) *stats = st;
  return out;
}

double kkt_residual(const WeightMatrix& solution, const OmdProblem& problem) {
  validate(problem);
  const int rows = problem.prior.rows;
  const int cols = problem.prior.cols;
  if (solution.rows != rows || solution.cols != cols) {
    throw std::invalid_argument("kkt_residual: shape mismatch");
  }
  ActiveSet active = problem.active;
  if (active.empty()) active.insert(0);

  const double floor = problem.floor;
  double total = 0.0;
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double v = solution.at(i, j);
      if (v < floor - 1e-9 * std::max(1.0, floor)) {
        throw std::invalid_argument("kkt_residual: solution below floor");
      }
      if (!active.contains(j) && std::abs(v - floor) > 1e-9 + 1e-6 * floor) {
        throw std::invalid_argument("kkt_residual: inactive coordinate not pinned");
      }
      total += v;
    }
  }
  if (std::abs(total - 1.0) > 0.1) {
    throw std::invalid_argument("kkt_residual: solution mass far from one");
  }

  // Recover the multiplier from the largest (hence interior) coordinate.
  int bi = -1, bj = -1;
  double best = -1.0;
  for (int j = 0; j < cols; ++j) {
    if (!active.contains(j)) continue;
    for (int i = 0; i < rows; ++i) {
      if (solution.at(i, j) > best) {
        best = solution.at(i, j);
        bi = i;
        bj = j;
      }
    }
  }
  double residual = std::abs(total - 1.0);
  if (bi < 0 || best <= floor * (1.0 + 1e-9)) {
    return residual;  // everything clamped; only the mass constraint is checkable
  }
  const double lambda_hat = problem.cost_at(bi, bj) +
                            std::log(solution.at(bi, bj) / problem.prior.at(bi, bj)) /
                                problem.grid.eta(bj);

  const double ln_floor = std::log(floor);
  for (int j = 0; j < cols; ++j) {
    if (!active.contains(j)) continue;
    const double eta = problem.grid.eta(j);
    for (int i = 0; i < rows; ++i) {
      const double v = solution.at(i, j);
      if (v > floor * (1.0 + 1e-9)) {
        const double viol = std::abs(eta * (problem.cost_at(i, j) - lambda_hat) +
                                     std::log(v / problem.prior.at(i, j)));
        residual = std::max(residual, viol);
      } else {
        const double e = std::log(problem.prior.at(i, j)) +
                         eta * (lambda_hat - problem.cost_at(i, j));
        residual = std::max(residual, std::max(0.0, e - ln_floor));
      }
    }
  }
  return residual;
}

}  // namespace oms
