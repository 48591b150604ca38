#pragma once

#include <span>
#include <vector>

#include "ssanum/allocation.hpp"
#include "ssanum/net_model.hpp"
#include "ssanum/utility.hpp"

namespace ssanum {

struct SolverSettings {
  int max_iters = 50000;
  // Stop when the unit-step projected gradient, with each BS column's
  // gradient normalized by its largest magnitude (scale-free), moves no
  // entry by more than grad_tol; or when one iteration improves the
  // objective by less than obj_tol relative.
  double grad_tol = 1e-7;
  double obj_tol = 1e-13;
  enum class StepRule { fixed, backtracking } step_rule = StepRule::backtracking;
  double min_share_floor = 1e-9;  // shares above this count as active in KKT checks
  double initial_step = 1.0;
  double backtrack_factor = 0.5;

  void validate() const;
};

struct MsaSolution {
  Allocation allocation;
  double objective = 0.0;  // on the original rate scale
  int iterations = 0;
  bool converged = false;
  // Max per-BS variance of scale-normalized marginal utilities
  // r_ub * U'_alpha(R_u) over shares above min_share_floor.
  double kkt_residual = 0.0;
  // Diagnostics recorded every iteration: largest objective decrease seen
  // (backtracking keeps this at 0) and worst feasibility drift of iterates.
  double ascent_violation = 0.0;
  double feasibility_violation = 0.0;
};

// Maximize sum_u U_alpha(sum_b r_ub y_ub) over allocations whose BS columns
// lie on the unit simplex, by projected gradient ascent with backtracking
// line search (the objective never decreases along accepted steps). Rates
// are normalized internally by their maximum; the maximizer is invariant to
// that scaling and the reported objective is re-evaluated on the original
// rates. Starts from the uniform interior point y = 1/num_mus. Finite alpha
// only; the max-min limit is out of scope.
MsaSolution solve_msa(const RateMatrix& rates, Alpha alpha,
                      const SolverSettings& settings = {});

// Euclidean projection of v onto the probability simplex (sort-and-threshold).
std::vector<double> project_to_simplex(std::span<const double> v);

// Per-MU Chiu-Jain index of the rate split (r_ub * y_ub over BSs): 1/num_bss
// when the MU is served by a single BS, 1 when evenly spread. All-zero rows
// score 1/num_bss and are counted in zero_rows.
struct SsaLikeness {
  std::vector<double> per_mu;
  int zero_rows = 0;
};
SsaLikeness msa_ssa_likeness(const RateMatrix& rates, const Allocation& alloc);

}  // namespace ssanum
