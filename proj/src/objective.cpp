#include "ssanum/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ssanum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_shapes(const RateMatrix& rates, const Association& assoc) {
  if (rates.rates.rows() != assoc.num_mus() || rates.rates.cols() != assoc.num_bss()) {
    throw std::invalid_argument("rate matrix and association shapes differ");
  }
}

// log sum_i exp(t_i), stabilized; t non-empty.
double log_sum_exp(const std::vector<double>& t) {
  double tmax = -kInf;
  for (double v : t) tmax = std::max(tmax, v);
  double s = 0.0;
  for (double v : t) s += std::exp(v - tmax);
  return tmax + std::log(s);
}

// Contribution of one BS column to the finite-alpha objective. For the
// optimal split the per-member closed forms telescope to
// (sum_v r_v^((1-alpha)/alpha))^alpha / (1-alpha), evaluated in log space.
double column_value(const Mat& r, std::span<const int> members, int b, Alpha alpha,
                    AllocMode mode) {
  if (members.empty()) return 0.0;
  const int k = static_cast<int>(members.size());
  const double a = alpha.effective();
  if (a == 0.0) {
    if (mode == AllocMode::optimal) {
      double best = -kInf;
      for (int u : members) best = std::max(best, r(u, b));
      return best;
    }
    double s = 0.0;
    for (int u : members) s += r(u, b) / k;
    return s;
  }
  if (a == 1.0) {
    const double logk = std::log(static_cast<double>(k));
    double s = 0.0;
    for (int u : members) s += std::log(r(u, b)) - logk;
    return s;
  }
  if (mode == AllocMode::uniform) {
    const double logk = std::log(static_cast<double>(k));
    double s = 0.0;
    for (int u : members) s += std::exp((1.0 - a) * (std::log(r(u, b)) - logk));
    return s / (1.0 - a);
  }
  const double e = (1.0 - a) / a;
  std::vector<double> t(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    t[i] = e * std::log(r(members[i], b));
  }
  return std::exp(a * log_sum_exp(t)) / (1.0 - a);
}

// Min served rate over assigned MUs, optionally with one extra (mu, bs)
// assignment overlaid; 0 when nothing is assigned. Used for alpha = inf.
double min_served_rate(const Mat& r, const Association& assoc, AllocMode mode,
                       int extra_mu, int extra_bs) {
  double worst = kInf;
  bool any = false;
  for (int b = 0; b < assoc.num_bss(); ++b) {
    const auto m = assoc.members(b);
    int k = static_cast<int>(m.size());
    const bool grown = (b == extra_bs);
    if (grown) ++k;
    if (k == 0) continue;
    any = true;
    if (mode == AllocMode::optimal) {
      double inv = 0.0;
      for (int u : m) inv += 1.0 / r(u, b);
      if (grown) inv += 1.0 / r(extra_mu, b);
      worst = std::min(worst, 1.0 / inv);
    } else {
      for (int u : m) worst = std::min(worst, r(u, b) / k);
      if (grown) worst = std::min(worst, r(extra_mu, b) / k);
    }
  }
  return any ? worst : 0.0;
}

}  // namespace

double ssa_objective(const RateMatrix& rates, const Association& assoc, Alpha alpha,
                     AllocMode mode) {
  check_shapes(rates, assoc);
  if (alpha.is_infinite()) {
    return min_served_rate(rates.rates, assoc, mode, -1, -1);
  }
  double total = 0.0;
  for (int b = 0; b < assoc.num_bss(); ++b) {
    total += column_value(rates.rates, assoc.members(b), b, alpha, mode);
  }
  return total;
}

double msa_objective(const RateMatrix& rates, const Allocation& alloc, Alpha alpha) {
  const std::vector<double> served = downlink_rates(rates, alloc);
  return sum_utility(alpha, served);
}

double assignment_delta(const RateMatrix& rates, const Association& assoc, int mu,
                        int bs, Alpha alpha, AllocMode mode) {
  check_shapes(rates, assoc);
  if (mu < 0 || mu >= assoc.num_mus() || bs < 0 || bs >= assoc.num_bss()) {
    throw std::invalid_argument("assignment_delta: index out of range");
  }
  if (assoc.is_assigned(mu)) {
    throw std::invalid_argument("assignment_delta: MU already assigned");
  }
  if (alpha.is_infinite()) {
    return min_served_rate(rates.rates, assoc, mode, mu, bs) -
           min_served_rate(rates.rates, assoc, mode, -1, -1);
  }
  const auto m = assoc.members(bs);
  std::vector<int> grown(m.begin(), m.end());
  grown.insert(std::lower_bound(grown.begin(), grown.end(), mu), mu);
  return column_value(rates.rates, grown, bs, alpha, mode) -
         column_value(rates.rates, m, bs, alpha, mode);
}

void FractionalAssociation::validate() const {
  for (int u = 0; u < weights.rows(); ++u) {
    double s = 0.0;
    for (int b = 0; b < weights.cols(); ++b) {
      const double x = weights(u, b);
      if (std::isnan(x) || x < 0.0 || x > 1.0 + 1e-12) {
        throw std::invalid_argument("FractionalAssociation: entry outside [0, 1]");
      }
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-9) {
      throw std::invalid_argument("FractionalAssociation: row does not sum to 1");
    }
  }
}

double relaxed_objective(const RateMatrix& rates, const FractionalAssociation& x,
                         Alpha alpha, AllocMode mode) {
  if (!rates.rates.same_shape(x.weights)) {
    throw std::invalid_argument("relaxed_objective: shape mismatch");
  }
  if (alpha.is_infinite()) {
    throw std::domain_error("relaxed_objective: alpha = inf not supported");
  }
  x.validate();
  const Mat& r = rates.rates;
  const Mat& w = x.weights;
  const int U = r.rows(), B = r.cols();
  const double a = alpha.effective();

  if (a == 0.0 && mode == AllocMode::optimal) {
    double total = 0.0;
    for (int b = 0; b < B; ++b) {
      double best = 0.0;
      for (int u = 0; u < U; ++u) best = std::max(best, r(u, b) * w(u, b));
      total += best;
    }
    return total;
  }

  // Every other case is sum over x_ub > 0 of x_ub * U_alpha(r_ub / B_ub),
  // where B_ub = 1 + sum_{v != u} d_uvb x_vb and d is the rate ratio raised
  // to (1-alpha)/alpha (optimal) or 1 (uniform).
  const double e = (mode == AllocMode::optimal) ? (1.0 - a) / a : 0.0;
  double total = 0.0;
  std::vector<double> t;
  for (int b = 0; b < B; ++b) {
    for (int u = 0; u < U; ++u) {
      if (w(u, b) <= 0.0) continue;
      double log_bracket;
      if (mode == AllocMode::uniform) {
        double br = 1.0;
        for (int v = 0; v < U; ++v) {
          if (v != u) br += w(v, b);
        }
        log_bracket = std::log(br);
      } else {
        t.clear();
        t.push_back(0.0);  // the literal 1 in the bracket
        const double logru = std::log(r(u, b));
        for (int v = 0; v < U; ++v) {
          if (v == u || w(v, b) <= 0.0) continue;
          t.push_back(e * (std::log(r(v, b)) - logru) + std::log(w(v, b)));
        }
        log_bracket = log_sum_exp(t);
      }
      const double log_ratio = std::log(r(u, b)) - log_bracket;
      if (a == 1.0) {
        total += w(u, b) * log_ratio;
      } else {
        total += w(u, b) * std::exp((1.0 - a) * log_ratio) / (1.0 - a);
      }
    }
  }
  return total;
}

std::array<double, 2> summand_hessian_eigs(double x, double y, Alpha alpha) {
  if (!(x > 0.0) || x > 1.0 || !(y >= 0.0)) {
    throw std::invalid_argument("summand_hessian_eigs: need x in (0,1], y >= 0");
  }
  if (alpha.is_infinite() || alpha.is_zero() || alpha.is_one()) {
    throw std::invalid_argument("summand_hessian_eigs: alpha must be finite, > 0, != 1");
  }
  const double a = alpha.effective();
  // H = [[0, b], [b, c]] for g(x, y) = x (1+y)^(a-1)
  const double b = (a - 1.0) * std::pow(1.0 + y, a - 2.0);
  const double c = (a - 1.0) * (a - 2.0) * x * std::pow(1.0 + y, a - 3.0);
  const double disc = std::sqrt(c * c + 4.0 * b * b);
  return {(c - disc) / 2.0, (c + disc) / 2.0};
}

EpsilonGpResult epsilon_gp_two_bs_one_mu(double r_ua, double r_ub, Alpha alpha,
                                         double eps) {
  if (!(r_ua > 0.0) || !(r_ub > 0.0)) {
    throw std::invalid_argument("epsilon_gp_two_bs_one_mu: rates must be positive");
  }
  if (alpha.is_infinite() || !(alpha.effective() > 1.0)) {
    throw std::invalid_argument("epsilon_gp_two_bs_one_mu: need finite alpha > 1");
  }
  const double ratio = std::min(r_ua / r_ub, r_ub / r_ua);
  if (!(eps > 0.0) || !(eps < ratio) || !(eps < 1.0)) {
    throw std::invalid_argument("epsilon_gp_two_bs_one_mu: eps too large for feasibility");
  }
  const double a = alpha.effective();
  EpsilonGpResult res;
  // Interior stationary point on y_ua * y_ub = eps equalizes served rates.
  res.candidates[0] = {std::sqrt(eps * r_ub / r_ua), std::sqrt(eps * r_ua / r_ub)};
  res.candidates[1] = {1.0, eps};
  res.candidates[2] = {eps, 1.0};
  auto objective = [&](std::pair<double, double> y) {
    return (std::pow(r_ua * y.first, 1.0 - a) + std::pow(r_ub * y.second, 1.0 - a)) /
           (a - 1.0);
  };
  for (int i = 0; i < 3; ++i) {
    res.objective_values[i] = objective(res.candidates[i]);
    if (res.minimizer < 0 || res.objective_values[i] < res.objective_values[res.minimizer]) {
      res.minimizer = i;
    }
  }
  return res;
}

}  // namespace ssanum
