#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ssanum {

// Fairness parameter of the alpha-proportional utility family. Non-negative,
// with a distinguished infinity variant standing for the max-min limit.
//
// Values below kZeroCutoff collapse to exactly 0 everywhere (utility,
// allocations, objectives): the closed-form share weights raise rates to
// (1-alpha)/alpha, which blows up as alpha -> 0, and using one shared cutoff
// keeps the closed-form objective and the allocation-then-sum route
// consistent with each other.
class Alpha {
 public:
  static constexpr double kZeroCutoff = 1e-8;

  explicit Alpha(double value);
  static Alpha infinity() { return Alpha(std::numeric_limits<double>::infinity(), 0); }

  // Raw value as constructed (may be +inf).
  double value() const { return value_; }
  // Value with the near-zero collapse applied. Callers implementing formulas
  // should use this.
  double effective() const { return value_ < kZeroCutoff ? 0.0 : value_; }

  bool is_infinite() const;
  bool is_zero() const { return !is_infinite() && effective() == 0.0; }
  bool is_one() const { return value_ == 1.0; }

  std::string str() const;  // "inf" or a shortest round-trip decimal

 private:
  Alpha(double v, int) : value_(v) {}
  double value_;
};

// U_alpha(R) for a single rate R >= 0 (extended-real result):
//   alpha == 1        -> log R            (natural log; R = 0 -> -inf)
//   alpha != 1 finite -> R^(1-alpha) / (1-alpha)
//                        (R = 0 -> 0 for alpha < 1, -inf for alpha > 1)
// Throws std::invalid_argument for R < 0 and std::domain_error for
// alpha = inf (the max-min proxy is defined on rate vectors, not scalars).
double utility(Alpha alpha, double rate);

// Sum of U_alpha over a rate vector; -inf is absorbing. At alpha = inf
// returns the minimum rate (max-min proxy).
double sum_utility(Alpha alpha, std::span<const double> rates);

// Chiu-Jain fairness index (sum v)^2 / (n * sum v^2) over a non-negative
// vector with at least one positive entry. Length-1 vectors score 1.
double chiu_jain(std::span<const double> values);

// Linear-interpolation percentile, q in [0, 100], of a non-empty sample.
double percentile(std::span<const double> values, double q);

}  // namespace ssanum
