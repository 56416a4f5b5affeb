#pragma once

#include <stdexcept>
#include <vector>

#include "oms/grid.hpp"
#include "oms/weights.hpp"

namespace oms {

/// One mirror-descent subproblem on the truncated simplex:
///
///   minimize  <cost, w> + D_psi(w, prior)
///   over      Omega = { w in simplex : w(i,j) >= floor for active j,
///                       w(i,j) = floor for inactive j }
///
/// where psi is the column-weighted negative entropy
/// psi(w) = sum_ij w(i,j) ln w(i,j) / eta(j). The prior need not sum to
/// one but every entry must be strictly positive.
struct OmdProblem {
  WeightMatrix prior;
  std::vector<double> cost;  // row-major, same shape as prior
  ActiveSet active;
  double floor = 0.0;
  LearningRateGrid grid;

  double cost_at(int i, int j) const {
    return cost[static_cast<std::size_t>(i) * static_cast<std::size_t>(prior.cols) +
                static_cast<std::size_t>(j)];
  }
};

struct SolveStats {
  int bracket_expansions = 0;
  int bisection_steps = 0;
  double lambda = 0.0;
  double final_gap = 0.0;      // |g(lambda)| at termination
  double bracket_width = 0.0;  // hi - lo at termination
  bool fell_back_to_first_column = false;
};

/// Thrown when the scalar root for the simplex multiplier cannot be
/// bracketed even after repeated outward doubling (pathological cost or
/// learning-rate magnitudes), or when the solve degenerates.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// psi(w) for strictly positive entries. Rejects nonpositive entries.
double negentropy_potential(const WeightMatrix& w, const LearningRateGrid& grid);

/// D_psi(y, x) with the 0 ln 0 := 0 convention for y. Rejects x with
/// nonpositive entries. Mathematically nonnegative; floating-point dust of
/// order 1e-16 below zero is possible and left unclipped.
double bregman_divergence(const WeightMatrix& y, const WeightMatrix& x,
                          const LearningRateGrid& grid);

/// Total feasible mass at a candidate multiplier:
///   sum_active max(floor, prior * exp(eta * (lambda - cost))) + floor * #inactive.
/// Nondecreasing in lambda; the solver's root is the lambda where this
/// equals one. Exposed for diagnostics and property tests.
double truncated_mass(const OmdProblem& problem, double lambda);

/// Solves the subproblem by bisection on the simplex multiplier. The KKT
/// conditions give w(i,j) = max(floor, prior * exp(eta(j) (lambda - cost)))
/// on active columns; lambda is located to |g| <= 1e-12 or bracket width
/// <= 1e-14, then the free coordinates are rescaled so the total mass is
/// exactly one. Throws SolveError when no bracket can be established and
/// std::invalid_argument on infeasible inputs.
WeightMatrix solve_truncated_omd(const OmdProblem& problem, SolveStats* stats = nullptr);

/// Max KKT violation of a feasible point: stationarity gap on interior
/// coordinates against the multiplier recovered from the largest
/// coordinate, clamp-direction violations on floored coordinates, plus
/// |sum - 1|. Rejects grossly infeasible solutions.
double kkt_residual(const WeightMatrix& solution, const OmdProblem& problem);

}  // namespace oms
