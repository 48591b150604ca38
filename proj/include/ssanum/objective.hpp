#pragma once

#include <array>
#include <utility>

#include "ssanum/allocation.hpp"
#include "ssanum/matrix.hpp"
#include "ssanum/net_model.hpp"
#include "ssanum/utility.hpp"

namespace ssanum {

// Which per-BS resource split scores an association: the alpha-optimal
// closed form or the equal split.
enum class AllocMode { optimal, uniform };

// Closed-form SSA objective of an association (partial states allowed;
// unassigned MUs contribute nothing). Evaluated directly from the rate
// matrix, not by materializing an allocation, so it can cross-check the
// allocation route. Finite alpha sums per-BS closed forms; alpha = inf is
// the minimum served rate over assigned MUs (0 when none are assigned).
double ssa_objective(const RateMatrix& rates, const Association& assoc, Alpha alpha,
                     AllocMode mode);

// sum_utility of the served-rate vector induced by an explicit allocation.
double msa_objective(const RateMatrix& rates, const Allocation& alloc, Alpha alpha);

// Objective change from assigning unassigned MU mu to BS bs. For finite
// alpha only the candidate BS's column is touched; the result equals the
// global objective difference. alpha = inf falls back to the global
// evaluation (a min does not localize).
double assignment_delta(const RateMatrix& rates, const Association& assoc, int mu,
                        int bs, Alpha alpha, AllocMode mode);

// Row-stochastic fractional association (each MU spreads over BSs).
struct FractionalAssociation {
  Mat weights;
  void validate() const;  // rows sum to 1 within 1e-9, entries in [0, 1]
};

// Fractional relaxation of ssa_objective (finite alpha only).
double relaxed_objective(const RateMatrix& rates, const FractionalAssociation& x,
                         Alpha alpha, AllocMode mode);

// Eigenvalues (min, max) of the Hessian of g(x, y) = x * (1+y)^(alpha-1),
// the coupling summand of the relaxed objective. One is negative and one
// positive for every finite alpha > 0, alpha != 1 (the relaxation is neither
// convex nor concave); at alpha = 2 they are exactly {-1, +1}.
std::array<double, 2> summand_hessian_eigs(double x, double y, Alpha alpha);

// Feasibility-restoration study for one MU reachable by two BSs with an
// eps product floor on the shares: evaluates the objective
// (1/(alpha-1)) * ((r_ua y_ua)^(1-alpha) + (r_ub y_ub)^(1-alpha)), alpha > 1,
// at the three KKT candidates and identifies the minimizer. The interior
// candidate equalizes served rates (r_ua y_ua = r_ub y_ub) on the
// y_ua * y_ub = eps boundary; the other two sit at the share cap.
struct EpsilonGpResult {
  std::array<std::pair<double, double>, 3> candidates;  // (y_ua, y_ub)
  std::array<double, 3> objective_values;
  int minimizer = -1;
};
EpsilonGpResult epsilon_gp_two_bs_one_mu(double r_ua, double r_ub, Alpha alpha,
                                         double eps);

}  // namespace ssanum
