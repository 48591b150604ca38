#include "ssanum/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssanum {

Association::Association(int num_mus, int num_bss)
    : serving_(num_mus, -1), members_(num_bss) {
  if (num_mus < 1 || num_bss < 1) {
    throw std::invalid_argument("Association: counts must be >= 1");
  }
}

Association Association::from_serving(std::vector<int> serving_bs, int num_bss) {
  Association a(static_cast<int>(serving_bs.size()), num_bss);
  for (int u = 0; u < a.num_mus(); ++u) {
    if (serving_bs[u] >= 0) a.assign(u, serving_bs[u]);
  }
  return a;
}

void Association::assign(int u, int b) {
  if (u < 0 || u >= num_mus() || b < 0 || b >= num_bss()) {
    throw std::invalid_argument("Association::assign: index out of range");
  }
  if (serving_[u] >= 0) throw std::invalid_argument("Association::assign: MU already assigned");
  serving_[u] = b;
  auto& m = members_[b];
  m.insert(std::lower_bound(m.begin(), m.end(), u), u);
  ++assigned_;
}

void Association::unassign(int u) {
  if (u < 0 || u >= num_mus() || serving_[u] < 0) {
    throw std::invalid_argument("Association::unassign: MU not assigned");
  }
  auto& m = members_[serving_[u]];
  m.erase(std::lower_bound(m.begin(), m.end(), u));
  serving_[u] = -1;
  --assigned_;
}

Mat Association::one_hot() const {
  Mat z(num_mus(), num_bss());
  for (int u = 0; u < num_mus(); ++u) {
    if (serving_[u] >= 0) z(u, serving_[u]) = 1.0;
  }
  return z;
}

namespace {

void check_shapes(const RateMatrix& rates, const Association& assoc) {
  if (rates.rates.rows() != assoc.num_mus() || rates.rates.cols() != assoc.num_bss()) {
    throw std::invalid_argument("rate matrix and association shapes differ");
  }
}

}  // namespace

// Shares for one BS column. members must be non-empty.
static void column_shares(const Mat& r, std::span<const int> members, int b,
                          Alpha alpha, Mat& y) {
  const int k = static_cast<int>(members.size());
  if (alpha.is_one()) {
    for (int u : members) y(u, b) = 1.0 / k;
    return;
  }
  if (alpha.is_zero()) {
    int best = members[0];
    for (int u : members) {
      if (r(u, b) > r(best, b)) best = u;  // ties keep the lowest index
    }
    y(best, b) = 1.0;
    return;
  }
  // exponent (1-alpha)/alpha, with the alpha = inf limit -1
  const double e =
      alpha.is_infinite() ? -1.0 : (1.0 - alpha.effective()) / alpha.effective();
  double tmax = -std::numeric_limits<double>::infinity();
  std::vector<double> t(k);
  for (int i = 0; i < k; ++i) {
    t[i] = e * std::log(r(members[i], b));
    tmax = std::max(tmax, t[i]);
  }
  double denom = 0.0;
  for (int i = 0; i < k; ++i) {
    t[i] = std::exp(t[i] - tmax);
    denom += t[i];
  }
  for (int i = 0; i < k; ++i) y(members[i], b) = t[i] / denom;
}

Allocation optimal_allocation(const RateMatrix& rates, const Association& assoc,
                              Alpha alpha) {
  check_shapes(rates, assoc);
  if (!assoc.is_complete()) {
    throw std::invalid_argument("optimal_allocation: association is not complete");
  }
  Allocation out{Mat(assoc.num_mus(), assoc.num_bss())};
  for (int b = 0; b < assoc.num_bss(); ++b) {
    if (assoc.load(b) > 0) column_shares(rates.rates, assoc.members(b), b, alpha, out.shares);
  }
  return out;
}

Allocation uniform_allocation(const Association& assoc) {
  if (!assoc.is_complete()) {
    throw std::invalid_argument("uniform_allocation: association is not complete");
  }
  Allocation out{Mat(assoc.num_mus(), assoc.num_bss())};
  for (int b = 0; b < assoc.num_bss(); ++b) {
    const int k = assoc.load(b);
    for (int u : assoc.members(b)) out.shares(u, b) = 1.0 / k;
  }
  return out;
}

std::vector<double> downlink_rates(const RateMatrix& rates, const Allocation& alloc) {
  if (!rates.rates.same_shape(alloc.shares)) {
    throw std::invalid_argument("downlink_rates: shape mismatch");
  }
  std::vector<double> out(rates.rates.rows());
  for (int u = 0; u < rates.rates.rows(); ++u) {
    double s = 0.0;
    for (int b = 0; b < rates.rates.cols(); ++b) s += rates.rates(u, b) * alloc.shares(u, b);
    out[u] = s;
  }
  return out;
}

double allocation_rate_sensitivity(const RateMatrix& rates, const Association& assoc,
                                   Alpha alpha, int mu, double h) {
  check_shapes(rates, assoc);
  if (alpha.is_infinite() || alpha.is_zero()) {
    throw std::invalid_argument("allocation_rate_sensitivity: alpha must be finite > 0");
  }
  if (mu < 0 || mu >= assoc.num_mus() || !assoc.is_assigned(mu)) {
    throw std::invalid_argument("allocation_rate_sensitivity: MU not assigned");
  }
  const int b = assoc.serving_bs(mu);
  if (assoc.load(b) < 2) {
    throw std::invalid_argument(
        "allocation_rate_sensitivity: singleton BS, share pinned at 1");
  }
  if (!(h > 0.0) || !(rates.rates(mu, b) - h > 0.0)) {
    throw std::invalid_argument("allocation_rate_sensitivity: bad step h");
  }
  RateMatrix pert = rates;
  pert.rates(mu, b) = rates.rates(mu, b) + h;
  const double up = optimal_allocation(pert, assoc, alpha).shares(mu, b);
  pert.rates(mu, b) = rates.rates(mu, b) - h;
  const double dn = optimal_allocation(pert, assoc, alpha).shares(mu, b);
  return (up - dn) / (2.0 * h);
}

double kkt_stationarity_spread(const RateMatrix& rates, const Association& assoc,
                               Alpha alpha, const Allocation& alloc) {
  check_shapes(rates, assoc);
  if (!rates.rates.same_shape(alloc.shares)) {
    throw std::invalid_argument("kkt_stationarity_spread: shape mismatch");
  }
  if (alpha.is_zero()) {
    throw std::invalid_argument(
        "kkt_stationarity_spread: alpha = 0 optimum is a vertex, no multiplier form");
  }
  double worst = 0.0;
  for (int b = 0; b < assoc.num_bss(); ++b) {
    const auto m = assoc.members(b);
    if (m.size() < 2) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double mean = 0.0;
    for (int u : m) {
      const double r = rates.rates(u, b);
      const double y = alloc.shares(u, b);
      double q;
      if (alpha.is_one()) {
        q = y;
      } else if (alpha.is_infinite()) {
        q = r * y;  // equalized served rate is the alpha -> inf stationarity
      } else {
        const double a = alpha.effective();
        q = std::exp((1.0 - a) * std::log(r) - a * std::log(y));
      }
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      mean += q;
    }
    mean /= static_cast<double>(m.size());
    if (mean != 0.0) worst = std::max(worst, (hi - lo) / std::abs(mean));
  }
  return worst;
}

}  // namespace ssanum
