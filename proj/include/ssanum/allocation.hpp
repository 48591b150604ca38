#pragma once

#include <span>
#include <vector>

#include "ssanum/matrix.hpp"
#include "ssanum/net_model.hpp"
#include "ssanum/utility.hpp"

namespace ssanum {

// Single-station association: each MU serves at most one BS. Partial states
// (unassigned MUs) are first-class so greedy construction can run on them.
// Per-BS member lists are kept sorted ascending for deterministic iteration.
class Association {
 public:
  Association(int num_mus, int num_bss);
  static Association from_serving(std::vector<int> serving_bs, int num_bss);

  int num_mus() const { return static_cast<int>(serving_.size()); }
  int num_bss() const { return static_cast<int>(members_.size()); }

  bool is_assigned(int u) const { return serving_[u] >= 0; }
  int serving_bs(int u) const { return serving_[u]; }  // -1 when unassigned
  bool is_complete() const { return assigned_ == num_mus(); }
  int assigned_count() const { return assigned_; }

  void assign(int u, int b);
  void unassign(int u);

  std::span<const int> members(int b) const { return members_[b]; }
  int load(int b) const { return static_cast<int>(members_[b].size()); }

  Mat one_hot() const;
  const std::vector<int>& serving() const { return serving_; }

  bool operator==(const Association& o) const { return serving_ == o.serving_; }

 private:
  std::vector<int> serving_;
  std::vector<std::vector<int>> members_;
  int assigned_ = 0;
};

// Resource shares y (num_mus x num_bss); every BS column sums to 1 over the
// whole MU set, allocated or not.
struct Allocation {
  Mat shares;
};

// Per-BS closed-form share weights for the associated set at fairness alpha:
//   alpha = 1   -> uniform 1/|U_b|
//   finite != 1 -> proportional to r^((1-alpha)/alpha) (log-space softmax)
//   alpha = inf -> proportional to 1/r (equalizes served rates)
//   alpha = 0   -> everything to the largest-rate member, ties lowest index
// Throws when the association is not complete. Empty BSs get zero columns
// (their unit of resource is unused, matching the uniform variant below).
Allocation optimal_allocation(const RateMatrix& rates, const Association& assoc,
                              Alpha alpha);

// Equal split 1/|U_b| among associated MUs; alpha-independent.
Allocation uniform_allocation(const Association& assoc);

// Served rate per MU: R_u = sum_b rates(u, b) * y(u, b).
std::vector<double> downlink_rates(const RateMatrix& rates, const Allocation& alloc);

// Central finite-difference dy*_ub/dr_ub of the closed-form share of MU u at
// its serving BS. Requires 0 < alpha finite, at least two MUs on that BS, and
// h < r_ub. Positive for alpha < 1, exactly 0 at alpha = 1, negative above.
double allocation_rate_sensitivity(const RateMatrix& rates, const Association& assoc,
                                   Alpha alpha, int mu, double h);

// Worst per-BS KKT stationarity spread of the allocation: for finite
// alpha != 1 the quantity r^(1-alpha) * y^(-alpha) must be constant across
// the BS's members; at alpha = 1 shares must be equal and at alpha = inf
// served rates r*y must be equal. Returns the max relative spread
// (max - min) / |mean| over BSs with >= 2 members (0 when there are none).
double kkt_stationarity_spread(const RateMatrix& rates, const Association& assoc,
                               Alpha alpha, const Allocation& alloc);

}  // namespace ssanum
