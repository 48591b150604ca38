#include "ssanum/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ssanum/rng.hpp"

namespace ssanum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::CGA: return "CGA";
    case AlgorithmKind::LGA: return "LGA";
    case AlgorithmKind::LGAN: return "LGAN";
    case AlgorithmKind::MSARnd: return "MSARnd";
    case AlgorithmKind::MinD: return "MinD";
    case AlgorithmKind::MaxS: return "MaxS";
    case AlgorithmKind::BruteForce: return "BruteForce";
  }
  throw std::logic_error("unknown algorithm kind");
}

AlgorithmKind algorithm_from_string(const std::string& name) {
  if (name == "CGA") return AlgorithmKind::CGA;
  if (name == "LGA") return AlgorithmKind::LGA;
  if (name == "LGAN") return AlgorithmKind::LGAN;
  if (name == "MSARnd") return AlgorithmKind::MSARnd;
  if (name == "MinD") return AlgorithmKind::MinD;
  if (name == "MaxS") return AlgorithmKind::MaxS;
  if (name == "BruteForce") return AlgorithmKind::BruteForce;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(AllocMode mode) {
  return mode == AllocMode::optimal ? "optimal" : "uniform";
}

AllocMode alloc_mode_from_string(const std::string& name) {
  if (name == "optimal") return AllocMode::optimal;
  if (name == "uniform") return AllocMode::uniform;
  throw std::invalid_argument("unknown alloc mode: " + name);
}

Association run_cga(const RateMatrix& rates, Alpha alpha, AllocMode mode) {
  const int U = rates.rates.rows(), B = rates.rates.cols();
  Association z(U, B);
  for (int round = 0; round < U; ++round) {
    double best = -kInf;
    int best_u = -1, best_b = -1;
    for (int u = 0; u < U; ++u) {
      if (z.is_assigned(u)) continue;
      for (int b = 0; b < B; ++b) {
        const double d = assignment_delta(rates, z, u, b, alpha, mode);
        if (best_u < 0 || d > best) {
          best = d;
          best_u = u;
          best_b = b;
        }
      }
    }
    z.assign(best_u, best_b);
  }
  return z;
}

Association run_lga(const RateMatrix& rates, Alpha alpha, AllocMode mode) {
  const int U = rates.rates.rows(), B = rates.rates.cols();
  Association z(U, B);
  std::vector<std::vector<int>> requests(B);
  while (!z.is_complete()) {
    for (auto& r : requests) r.clear();
    for (int u = 0; u < U; ++u) {
      if (z.is_assigned(u)) continue;
      double best = -kInf;
      int best_b = -1;
      for (int b = 0; b < B; ++b) {
        const double d = assignment_delta(rates, z, u, b, alpha, mode);
        if (best_b < 0 || d > best) {
          best = d;
          best_b = b;
        }
      }
      requests[best_b].push_back(u);  // ascending u by construction
    }
    // Grants at different BSs touch disjoint columns, so processing them in
    // BS order is the same as processing them independently.
    for (int b = 0; b < B; ++b) {
      if (requests[b].empty()) continue;
      double best = -kInf;
      int grant = -1;
      for (int v : requests[b]) {
        const double d = assignment_delta(rates, z, v, b, alpha, mode);
        if (grant < 0 || d > best) {
          best = d;
          grant = v;
        }
      }
      z.assign(grant, b);
    }
  }
  return z;
}

Association run_lgan(const RateMatrix& rates, Alpha alpha) {
  (void)alpha;  // U_alpha is increasing, so the request argmax is alpha-free
  const int U = rates.rates.rows(), B = rates.rates.cols();
  Association z(U, B);
  std::vector<int> load(B, 0);
  std::vector<std::vector<int>> requests(B);
  while (!z.is_complete()) {
    for (auto& r : requests) r.clear();
    for (int u = 0; u < U; ++u) {
      if (z.is_assigned(u)) continue;
      double best = -kInf;
      int best_b = -1;
      for (int b = 0; b < B; ++b) {
        const double v = rates.rates(u, b) / (load[b] + 1);
        if (v > best) {
          best = v;
          best_b = b;
        }
      }
      requests[best_b].push_back(u);
    }
    for (int b = 0; b < B; ++b) {
      if (requests[b].empty()) continue;
      z.assign(requests[b].front(), b);  // lowest-index requester
      ++load[b];
    }
  }
  return z;
}

MsaRounding msa_round(const RateMatrix& rates, const Allocation& msa_alloc) {
  if (!rates.rates.same_shape(msa_alloc.shares)) {
    throw std::invalid_argument("msa_round: shape mismatch");
  }
  const int U = rates.rates.rows(), B = rates.rates.cols();
  MsaRounding out{Association(U, B), 0};
  for (int u = 0; u < U; ++u) {
    double best = -kInf;
    int best_b = -1;
    bool all_zero = true;
    for (int b = 0; b < B; ++b) {
      const double v = rates.rates(u, b) * msa_alloc.shares(u, b);
      if (v > 0.0) all_zero = false;
      if (v > best) {
        best = v;
        best_b = b;
      }
    }
    if (all_zero) {
      ++out.zero_row_fallbacks;
      best_b = 0;
      for (int b = 1; b < B; ++b) {
        if (rates.rates(u, b) > rates.rates(u, best_b)) best_b = b;
      }
    }
    out.assoc.assign(u, best_b);
  }
  return out;
}

Association run_min_distance(const NetworkInstance& instance) {
  const int U = static_cast<int>(instance.mu_positions.size());
  const int B = static_cast<int>(instance.bs_positions.size());
  Association z(U, B);
  for (int u = 0; u < U; ++u) {
    int best_b = 0;
    double best = distance(instance.mu_positions[u], instance.bs_positions[0]);
    for (int b = 1; b < B; ++b) {
      const double d = distance(instance.mu_positions[u], instance.bs_positions[b]);
      if (d < best) {
        best = d;
        best_b = b;
      }
    }
    z.assign(u, best_b);
  }
  return z;
}

Association run_max_sinr(const RateMatrix& rates) {
  const int U = rates.sinrs.rows(), B = rates.sinrs.cols();
  Association z(U, B);
  for (int u = 0; u < U; ++u) {
    int best_b = 0;
    for (int b = 1; b < B; ++b) {
      if (rates.sinrs(u, b) > rates.sinrs(u, best_b)) best_b = b;
    }
    z.assign(u, best_b);
  }
  return z;
}

bool brute_force_within_cap(int num_mus, int num_bss) {
  if (num_mus < 1 || num_bss < 1) return false;
  constexpr std::uint64_t kCap = 1ULL << 20;
  std::uint64_t total = 1;
  for (int u = 0; u < num_mus; ++u) {
    total *= static_cast<std::uint64_t>(num_bss);
    if (total > kCap) return false;
  }
  return true;
}

namespace {

// Calls fn(serving) for every BS vector in lexicographic order.
template <typename Fn>
void enumerate_assignments(int U, int B, Fn&& fn) {
  std::vector<int> serving(U, 0);
  for (;;) {
    fn(serving);
    int i = U - 1;
    while (i >= 0 && serving[i] == B - 1) {
      serving[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++serving[i];
  }
}

}  // namespace

BruteForceResult brute_force_ssa(const RateMatrix& rates, Alpha alpha, AllocMode mode) {
  const int U = rates.rates.rows(), B = rates.rates.cols();
  if (!brute_force_within_cap(U, B)) {
    throw std::invalid_argument("brute_force_ssa: num_bss^num_mus exceeds 2^20");
  }
  BruteForceResult best{Association(U, B), -kInf};
  bool have = false;
  enumerate_assignments(U, B, [&](const std::vector<int>& serving) {
    Association z = Association::from_serving(serving, B);
    const double f = ssa_objective(rates, z, alpha, mode);
    if (!have || f > best.objective) {  // strict: earliest assignment wins ties
      best = {std::move(z), f};
      have = true;
    }
  });
  return best;
}

Association randomized_round(const FractionalAssociation& x, std::uint64_t seed) {
  x.validate();
  const int U = x.weights.rows(), B = x.weights.cols();
  Rng rng(seed);
  Association z(U, B);
  for (int u = 0; u < U; ++u) {
    const double t = rng.uniform01();
    double csum = 0.0;
    int pick = B - 1;
    for (int b = 0; b < B; ++b) {
      csum += x.weights(u, b);
      if (t < csum) {
        pick = b;
        break;
      }
    }
    z.assign(u, pick);
  }
  return z;
}

RoundingExpectation rounding_expectation_check(const RateMatrix& rates,
                                               const FractionalAssociation& x,
                                               Alpha alpha, AllocMode mode) {
  if (alpha.is_infinite()) {
    throw std::domain_error("rounding_expectation_check: alpha must be finite");
  }
  x.validate();
  const int U = x.weights.rows(), B = x.weights.cols();
  if (!brute_force_within_cap(U, B)) {
    throw std::invalid_argument("rounding_expectation_check: outcome space exceeds 2^20");
  }
  RoundingExpectation out;
  out.relaxed_value = relaxed_objective(rates, x, alpha, mode);
  out.max_support_value = -kInf;
  enumerate_assignments(U, B, [&](const std::vector<int>& serving) {
    double w = 1.0;
    for (int u = 0; u < U; ++u) w *= x.weights(u, serving[u]);
    if (w <= 0.0) return;
    const Association z = Association::from_serving(serving, B);
    const double f = ssa_objective(rates, z, alpha, mode);
    out.expectation += w * f;
    out.max_support_value = std::max(out.max_support_value, f);
  });
  constexpr double kSlack = 1e-9;
  const double a = alpha.effective();
  if (a < 2.0) {
    out.direction_ok = out.expectation >= out.relaxed_value - kSlack;
  } else if (a == 2.0) {
    out.direction_ok = std::abs(out.expectation - out.relaxed_value) < kSlack;
  } else {
    out.direction_ok = out.expectation <= out.relaxed_value + kSlack;
  }
  return out;
}

}  // namespace ssanum
