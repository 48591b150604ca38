#include "ssanum/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ssanum/algorithms.hpp"
#include "ssanum/experiment.hpp"
#include "ssanum/msa_solver.hpp"
#include "ssanum/objective.hpp"
#include "ssanum/rng.hpp"

namespace ssanum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-12});
  return std::abs(a - b) / scale;
}

ScenarioConfig desk_scenario(int U, int B, std::uint64_t seed) {
  ScenarioConfig s;
  s.num_mus = U;
  s.num_bss = B;
  s.arena_side = 1000.0;
  s.tx_power_mw = 1000.0;
  s.noise_dbm = -90.0;
  s.pathloss_exponent = 3.0;
  s.bandwidth_hz = 1.0;  // keeps desk-check utilities near unit scale
  s.rng_seed = seed;
  return s;
}

RateMatrix desk_rates(int U, int B, std::uint64_t seed) {
  return compute_rate_matrix(generate_network(desk_scenario(U, B, seed)));
}

Association random_complete(int U, int B, Rng& rng) {
  Association z(U, B);
  for (int u = 0; u < U; ++u) z.assign(u, rng.uniform_int(B));
  return z;
}

Association random_partial(int U, int B, Rng& rng) {
  Association z(U, B);
  for (int u = 0; u < U; ++u) {
    if (rng.uniform01() < 0.6) z.assign(u, rng.uniform_int(B));
  }
  return z;
}

// Random feasible allocation: exponential weights normalized per non-empty
// BS column over its members.
Allocation random_feasible_allocation(const Association& z, Rng& rng) {
  Allocation a{Mat(z.num_mus(), z.num_bss())};
  for (int b = 0; b < z.num_bss(); ++b) {
    const auto m = z.members(b);
    if (m.empty()) continue;
    double sum = 0.0;
    std::vector<double> w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      w[i] = -std::log(1.0 - rng.uniform01());
      sum += w[i];
    }
    for (std::size_t i = 0; i < m.size(); ++i) a.shares(m[i], b) = w[i] / sum;
  }
  return a;
}

FractionalAssociation random_fractional(int U, int B, Rng& rng) {
  FractionalAssociation x{Mat(U, B)};
  for (int u = 0; u < U; ++u) {
    double sum = 0.0;
    for (int b = 0; b < B; ++b) {
      x.weights(u, b) = -std::log(1.0 - rng.uniform01());
      sum += x.weights(u, b);
    }
    for (int b = 0; b < B; ++b) x.weights(u, b) /= sum;
  }
  return x;
}

struct Checker {
  CheckResult res;
  explicit Checker(std::string name) { res.name = std::move(name); }
  void expect(bool ok, const std::string& what) {
    ++res.cases;
    if (!ok) {
      ++res.failures;
      if (res.detail.empty()) res.detail = what;
    }
  }
};

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckResult check_channel_scale(std::uint64_t seed) {
  Checker c("net_model.sinr_scale_and_monotonicity");
  Rng rng(seed);
  for (int it = 0; it < 200; ++it) {
    const int B = 2 + rng.uniform_int(4);
    std::vector<double> recv(B);
    for (double& v : recv) v = std::exp(rng.uniform(-6.0, 3.0));
    const double noise = std::exp(rng.uniform(-12.0, -2.0));
    const int b = rng.uniform_int(B);
    const double base = sinr_entry(recv, b, noise);
    std::vector<double> twice = recv;
    for (double& v : twice) v *= 2.0;
    c.expect(sinr_entry(twice, b, noise) > base, "doubling powers must raise SINR");
    c.expect(rel_err(sinr_entry(twice, b, 0.0), sinr_entry(recv, b, 0.0)) < 1e-12,
             "noise-free SINR must be power-scale invariant");
    // Farther MU from a lone interferer-free BS: signal-over-noise falls.
    const double g1 = std::pow(50.0 + it, -3.0), g2 = std::pow(51.0 + it, -3.0);
    c.expect(sinr_entry(std::vector<double>{g1}, 0, noise) >
                 sinr_entry(std::vector<double>{g2}, 0, noise),
             "single-BS SINR must fall with distance");
  }
  c.expect(rel_err(dbm_to_mw(-90.0), 1e-9) < 1e-12, "-90 dBm must be 1e-9 mW");
  c.expect(rel_err(dbm_to_mw(0.0), 1.0) < 1e-12, "0 dBm must be 1 mW");
  return c.res;
}

CheckResult check_generation(std::uint64_t seed, ValidationSizes sz) {
  Checker c("net_model.generation_determinism_and_separation");
  const ScenarioConfig cfg = desk_scenario(sz.num_mus, sz.num_bss, seed);
  const NetworkInstance a = generate_network(cfg);
  const NetworkInstance b = generate_network(cfg);
  bool same = a.mu_positions.size() == b.mu_positions.size();
  for (std::size_t i = 0; same && i < a.mu_positions.size(); ++i) {
    same = a.mu_positions[i].x == b.mu_positions[i].x &&
           a.mu_positions[i].y == b.mu_positions[i].y;
  }
  c.expect(same, "same seed must reproduce identical layouts");
  for (int rep = 0; rep < 50; ++rep) {
    ScenarioConfig s = cfg;
    s.rng_seed = Rng::stream_seed(seed, rep);
    const NetworkInstance inst = generate_network(s);
    double dmin = kInf;
    for (const Point& mu : inst.mu_positions) {
      for (const Point& bs : inst.bs_positions) dmin = std::min(dmin, distance(mu, bs));
    }
    c.expect(dmin >= 1.0, "MU-BS separation below 1 m");
    const RateMatrix rm = compute_rate_matrix(inst);
    for (double v : rm.rates.data()) {
      c.expect(std::isfinite(v) && v > 0.0, "rates must be positive and finite");
      break;  // one spot check per instance keeps the count readable
    }
  }
  return c.res;
}

CheckResult check_utility_shape(std::uint64_t seed) {
  Checker c("utility.monotone_concave_and_indices");
  Rng rng(seed);
  const double alphas[] = {0.0, 0.3, 0.5, 1.0, 1.5, 2.0, 3.5};
  for (double av : alphas) {
    const Alpha a(av);
    for (int it = 0; it < 100; ++it) {
      const double r1 = std::exp(rng.uniform(-3.0, 6.0));
      const double r2 = r1 * (1.0 + rng.uniform01());
      c.expect(utility(a, r2) > utility(a, r1), "utility must increase in rate");
      const double mid = 0.5 * (r1 + r2);
      c.expect(utility(a, mid) >=
                   0.5 * (utility(a, r1) + utility(a, r2)) - 1e-9 * std::abs(utility(a, mid)),
               "utility must be concave");
    }
  }
  for (int it = 0; it < 100; ++it) {
    const int n = 1 + rng.uniform_int(8);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(0.0, 5.0);
    if (*std::max_element(v.begin(), v.end()) == 0.0) v[0] = 1.0;
    const double j = chiu_jain(v);
    c.expect(j >= 1.0 / n - 1e-12 && j <= 1.0 + 1e-12, "Chiu-Jain outside [1/n, 1]");
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 7.25;
    c.expect(rel_err(chiu_jain(scaled), j) < 1e-12, "Chiu-Jain must be scale invariant");
  }
  return c.res;
}

CheckResult check_allocation_kkt(std::uint64_t seed, ValidationSizes sz) {
  Checker c("allocation.kkt_stationarity");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.25), Alpha(0.5), Alpha(2.0), Alpha(3.0),
                          Alpha::infinity()};
  for (int it = 0; it < 100; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, it));
    const Association z = random_complete(sz.num_mus, sz.num_bss, rng);
    for (const Alpha& a : alphas) {
      const Allocation y = optimal_allocation(rm, z, a);
      c.expect(kkt_stationarity_spread(rm, z, a, y) < 1e-6,
               "stationarity spread above 1e-6 at alpha " + a.str());
    }
  }
  return c.res;
}

CheckResult check_allocation_dominance(std::uint64_t seed, ValidationSizes sz) {
  Checker c("allocation.beats_random_feasible");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.0), Alpha(0.25), Alpha(0.5), Alpha(1.0), Alpha(2.0),
                          Alpha(3.0), Alpha::infinity()};
  for (int it = 0; it < 20; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 500 + it));
    const Association z = random_complete(sz.num_mus, sz.num_bss, rng);
    for (const Alpha& a : alphas) {
      const Allocation best = optimal_allocation(rm, z, a);
      const double f = sum_utility(a, downlink_rates(rm, best));
      for (int trial = 0; trial < 200; ++trial) {
        const Allocation y = random_feasible_allocation(z, rng);
        const double g = sum_utility(a, downlink_rates(rm, y));
        c.expect(g <= f + 1e-9 + 1e-9 * std::abs(f),
                 "random allocation beat the closed form at alpha " + a.str());
      }
    }
  }
  return c.res;
}

CheckResult check_allocation_continuity_and_sensitivity(std::uint64_t seed,
                                                        ValidationSizes sz) {
  Checker c("allocation.alpha1_continuity_and_sensitivity_signs");
  Rng rng(seed);
  for (int it = 0; it < 50; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 900 + it));
    const Association z = random_complete(sz.num_mus, sz.num_bss, rng);
    const Allocation uni = uniform_allocation(z);
    for (double av : {1.0 - 1e-6, 1.0 + 1e-6}) {
      const Allocation near = optimal_allocation(rm, z, Alpha(av));
      for (int u = 0; u < sz.num_mus; ++u) {
        const int b = z.serving_bs(u);
        c.expect(std::abs(near.shares(u, b) - uni.shares(u, b)) < 1e-4,
                 "allocation not continuous through alpha = 1");
      }
    }
    // Sensitivity signs on the first MU sharing its BS with someone else.
    for (int u = 0; u < sz.num_mus; ++u) {
      if (z.load(z.serving_bs(u)) < 2) continue;
      const double h = rm.rates(u, z.serving_bs(u)) * 1e-5;
      const double below = allocation_rate_sensitivity(rm, z, Alpha(0.5), u, h);
      const double at_one = allocation_rate_sensitivity(rm, z, Alpha(1.0), u, h);
      const double above = allocation_rate_sensitivity(rm, z, Alpha(2.0), u, h);
      c.expect(below > 0.0, "share must grow with own rate for alpha < 1");
      c.expect(std::abs(at_one) < 1e-9, "share must ignore rate at alpha = 1");
      c.expect(above < 0.0, "share must shrink with own rate for alpha > 1");
      break;
    }
  }
  return c.res;
}

CheckResult check_objective_consistency(std::uint64_t seed, ValidationSizes sz) {
  Checker c("objective.formula_matches_allocation_route");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.0),  Alpha(0.25), Alpha(0.5),        Alpha(1.0),
                          Alpha(1.5),  Alpha(2.0),  Alpha(3.0),        Alpha(4.0),
                          Alpha::infinity()};
  for (int it = 0; it < 60; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 1300 + it));
    const Association z = random_complete(sz.num_mus, sz.num_bss, rng);
    for (const Alpha& a : alphas) {
      const double f_formula = ssa_objective(rm, z, a, AllocMode::optimal);
      const double f_alloc = sum_utility(a, downlink_rates(rm, optimal_allocation(rm, z, a)));
      c.expect(rel_err(f_formula, f_alloc) < 1e-8,
               "optimal-mode objective mismatch at alpha " + a.str());
      const double g_formula = ssa_objective(rm, z, a, AllocMode::uniform);
      const double g_alloc = sum_utility(a, downlink_rates(rm, uniform_allocation(z)));
      c.expect(rel_err(g_formula, g_alloc) < 1e-8,
               "uniform-mode objective mismatch at alpha " + a.str());
    }
    c.expect(ssa_objective(rm, z, Alpha(1.0), AllocMode::optimal) ==
                 ssa_objective(rm, z, Alpha(1.0), AllocMode::uniform),
             "modes must coincide exactly at alpha = 1");
  }
  return c.res;
}

CheckResult check_objective_bound_chain(std::uint64_t seed, ValidationSizes sz) {
  Checker c("objective.uniform_le_optimal_le_msa");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.0), Alpha(0.5), Alpha(1.0), Alpha(2.0), Alpha(3.0)};
  for (int it = 0; it < 10; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 1700 + it));
    const Association z = random_complete(sz.num_mus, sz.num_bss, rng);
    for (const Alpha& a : alphas) {
      const double fsu = ssa_objective(rm, z, a, AllocMode::uniform);
      const double fso = ssa_objective(rm, z, a, AllocMode::optimal);
      const double fmsa = solve_msa(rm, a).objective;
      c.expect(fsu <= fso + 1e-9 + 1e-9 * std::abs(fso), "uniform objective above optimal");
      c.expect(fso <= fmsa + 1e-6 + 1e-6 * std::abs(fmsa), "SSA objective above MSA optimum");
    }
  }
  return c.res;
}

CheckResult check_delta_localization(std::uint64_t seed, ValidationSizes sz) {
  Checker c("objective.delta_equals_global_difference");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.0), Alpha(0.5), Alpha(1.0), Alpha(2.0), Alpha(3.0)};
  for (int it = 0; it < 40; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 2100 + it));
    for (const Alpha& a : alphas) {
      for (AllocMode mode : {AllocMode::optimal, AllocMode::uniform}) {
        Association z = random_partial(sz.num_mus, sz.num_bss, rng);
        for (int u = 0; u < sz.num_mus; ++u) {
          if (z.is_assigned(u)) continue;
          const int b = rng.uniform_int(sz.num_bss);
          const double d = assignment_delta(rm, z, u, b, a, mode);
          const double before = ssa_objective(rm, z, a, mode);
          z.assign(u, b);
          const double after = ssa_objective(rm, z, a, mode);
          z.unassign(u);
          // after - before cancels two large sums; scale the tolerance by them
          const double scale =
              std::max({std::abs(after), std::abs(before), std::abs(d), 1e-12});
          c.expect(std::abs(d - (after - before)) < 1e-9 * scale,
                   "delta differs from global difference at alpha " + a.str());
          break;
        }
      }
    }
  }
  return c.res;
}

CheckResult check_hessian(std::uint64_t seed) {
  Checker c("objective.relaxation_hessian_mixed_signs");
  Rng rng(seed);
  for (int it = 0; it < 1000; ++it) {
    const double x = 1e-3 + 0.999 * rng.uniform01();
    const double y = rng.uniform(0.0, 6.0);
    double av = rng.uniform(0.0, 5.0);
    if (av < 1e-3) av = 1e-3;
    if (std::abs(av - 1.0) < 1e-3) av += 2e-3;
    const auto eig = summand_hessian_eigs(x, y, Alpha(av));
    c.expect(eig[0] < 0.0 && eig[1] > 0.0, "eigenvalues must straddle zero");
    // Vieta cross-check against the Hessian entries.
    const double b = (av - 1.0) * std::pow(1.0 + y, av - 2.0);
    const double cc = (av - 1.0) * (av - 2.0) * x * std::pow(1.0 + y, av - 3.0);
    c.expect(rel_err(eig[0] + eig[1], cc) < 1e-9, "trace mismatch");
    c.expect(rel_err(eig[0] * eig[1], -b * b) < 1e-9, "determinant mismatch");
  }
  const auto at2 = summand_hessian_eigs(0.37, 1.8, Alpha(2.0));
  c.expect(std::abs(at2[0] + 1.0) < 1e-12 && std::abs(at2[1] - 1.0) < 1e-12,
           "alpha = 2 eigenvalues must be exactly -1 and +1");
  return c.res;
}

CheckResult check_msa_solver(std::uint64_t seed, ValidationSizes sz) {
  Checker c("msa.ascent_feasibility_kkt_dominance");
  Rng rng(seed);
  const Alpha alphas[] = {Alpha(0.0), Alpha(0.5), Alpha(1.0), Alpha(2.0)};
  SolverSettings st;
  for (int it = 0; it < 8; ++it) {
    const RateMatrix rm = desk_rates(sz.num_mus, sz.num_bss, Rng::stream_seed(seed, 2500 + it));
    for (const Alpha& a : alphas) {
      const MsaSolution sol = solve_msa(rm, a, st);
      c.expect(sol.converged, "solver must converge at desk scale");
      c.expect(sol.ascent_violation == 0.0, "objective must never decrease");
      c.expect(sol.feasibility_violation < 1e-9, "iterates must stay feasible");
      for (int b = 0; b < sz.num_bss; ++b) {
        double colsum = 0.0;
        for (int u = 0; u < sz.num_mus; ++u) colsum += sol.allocation.shares(u, b);
        c.expect(std::abs(colsum - 1.0) < 1e-9, "final columns must sum to 1");
        break;
      }
      if (!a.is_zero()) {
        c.expect(sol.kkt_residual < 100.0 * st.grad_tol,
                 "KKT residual too large at alpha " + a.str() + ": " + str(sol.kkt_residual));
      }
      for (int trial = 0; trial < 2000; ++trial) {
        Allocation y{Mat(sz.num_mus, sz.num_bss)};
        for (int b = 0; b < sz.num_bss; ++b) {
          double sum = 0.0;
          std::vector<double> w(sz.num_mus);
          for (int u = 0; u < sz.num_mus; ++u) {
            w[u] = -std::log(1.0 - rng.uniform01());
            sum += w[u];
          }
          for (int u = 0; u < sz.num_mus; ++u) y.shares(u, b) = w[u] / sum;
        }
        const double g = msa_objective(rm, y, a);
        c.expect(g <= sol.objective + 1e-6 + 1e-6 * std::abs(sol.objective),
                 "random allocation beat the solver at alpha " + a.str());
      }
    }
  }
  return c.res;
}

CheckResult check_algorithms(std::uint64_t seed, ValidationSizes sz) {
  Checker c("algorithms.complete_deterministic_bounded");
  Rng rng(seed);
  (void)rng;
  const bool can_brute = brute_force_within_cap(sz.num_mus, sz.num_bss);
  const Alpha alphas[] = {Alpha(0.5), Alpha(1.0), Alpha(2.0)};
  for (int it = 0; it < 15; ++it) {
    const std::uint64_t s = Rng::stream_seed(seed, 2900 + it);
    const NetworkInstance inst = generate_network(desk_scenario(sz.num_mus, sz.num_bss, s));
    const RateMatrix rm = compute_rate_matrix(inst);
    for (const Alpha& a : alphas) {
      const MsaSolution msa = solve_msa(rm, a);
      std::vector<std::pair<std::string, Association>> runs;
      runs.emplace_back("CGA", run_cga(rm, a, AllocMode::optimal));
      runs.emplace_back("LGA", run_lga(rm, a, AllocMode::optimal));
      runs.emplace_back("LGAN", run_lgan(rm, a));
      runs.emplace_back("MSARnd", msa_round(rm, msa.allocation).assoc);
      runs.emplace_back("MinD", run_min_distance(inst));
      runs.emplace_back("MaxS", run_max_sinr(rm));
      for (const auto& [name, z] : runs) {
        c.expect(z.is_complete(), name + " must assign every MU");
      }
      c.expect(run_cga(rm, a, AllocMode::optimal) == runs[0].second,
               "CGA must be deterministic");
      c.expect(run_lga(rm, a, AllocMode::optimal) == runs[1].second,
               "LGA must be deterministic");
      if (can_brute) {
        const BruteForceResult bf = brute_force_ssa(rm, a, AllocMode::optimal);
        c.expect(bf.objective <= msa.objective + 1e-6 + 1e-6 * std::abs(msa.objective),
                 "brute-force SSA above the MSA optimum");
        for (const auto& [name, z] : runs) {
          const double f = ssa_objective(rm, z, a, AllocMode::optimal);
          c.expect(f <= bf.objective + 1e-9 + 1e-9 * std::abs(bf.objective),
                   name + " beat the exhaustive optimum");
        }
      }
    }
  }
  return c.res;
}

CheckResult check_rounding(std::uint64_t seed) {
  Checker c("algorithms.rounding_jensen_directions");
  Rng rng(seed);
  const double alphas[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
  for (int it = 0; it < 60; ++it) {
    const int U = (it % 2 == 0) ? 4 : 3;
    const int B = (it % 2 == 0) ? 2 : 3;
    const RateMatrix rm = desk_rates(U, B, Rng::stream_seed(seed, 3300 + it));
    const FractionalAssociation x = random_fractional(U, B, rng);
    for (double av : alphas) {
      for (AllocMode mode : {AllocMode::optimal, AllocMode::uniform}) {
        const RoundingExpectation r = rounding_expectation_check(rm, x, Alpha(av), mode);
        c.expect(r.direction_ok, "Jensen direction failed at alpha " + str(av));
      }
    }
  }
  return c.res;
}

CheckResult check_integrality_witness(std::uint64_t seed) {
  Checker c("algorithms.rounding_support_witness");
  Rng rng(seed);
  const double alphas[] = {0.0, 0.5, 1.0, 1.5, 2.0};
  int ok = 0, total = 0;
  for (int it = 0; it < 40; ++it) {
    const RateMatrix rm = desk_rates(5, 2, Rng::stream_seed(seed, 3700 + it));
    for (double av : alphas) {
      const Alpha a(av);
      // Cheap local search over row weights: coordinate sweeps on a grid.
      FractionalAssociation x{Mat(5, 2)};
      for (int u = 0; u < 5; ++u) x.weights(u, 0) = x.weights(u, 1) = 0.5;
      double best = relaxed_objective(rm, x, a, AllocMode::optimal);
      for (int sweep = 0; sweep < 4; ++sweep) {
        for (int u = 0; u < 5; ++u) {
          const double keep = x.weights(u, 0);
          double arg = keep;
          for (int g = 0; g <= 100; ++g) {
            const double t = g / 100.0;
            x.weights(u, 0) = t;
            x.weights(u, 1) = 1.0 - t;
            const double f = relaxed_objective(rm, x, a, AllocMode::optimal);
            if (f > best) {
              best = f;
              arg = t;
            }
          }
          x.weights(u, 0) = arg;
          x.weights(u, 1) = 1.0 - arg;
        }
      }
      const RoundingExpectation r = rounding_expectation_check(rm, x, a, AllocMode::optimal);
      ++total;
      if (r.max_support_value >= r.relaxed_value - 1e-7) ++ok;
    }
  }
  c.expect(ok >= (total * 95) / 100,
           "support witness held on only " + std::to_string(ok) + "/" + std::to_string(total));
  return c.res;
}

CheckResult check_experiment_determinism(std::uint64_t seed) {
  Checker c("experiment.deterministic_and_consistent");
  ExperimentConfig cfg = default_experiment_config();
  cfg.scenario = desk_scenario(5, 2, seed);
  cfg.scenario.bandwidth_hz = 1.2e6;
  cfg.alpha_grid = {Alpha(0.5), Alpha(1.0), Alpha(2.0), Alpha::infinity()};
  cfg.num_samples = 3;
  RunOptions opts;
  opts.emit_timestamp = false;
  const ExperimentResult r1 = run_experiment(cfg, opts);
  const ExperimentResult r2 = run_experiment(cfg, opts);
  std::ostringstream a, b;
  write_records_csv(a, cfg, r1, opts);
  write_records_csv(b, cfg, r2, opts);
  c.expect(a.str() == b.str(), "identical runs must serialize identically");
  for (const ExperimentRecord& rec : r1.records) {
    if (rec.algorithm == "MSA" || rec.alpha.is_infinite()) continue;
    c.expect(rec.utility_loss_abs >= -1e-9 * std::max(1.0, std::abs(rec.sum_utility)),
             "algorithm beat the MSA optimum");
    c.expect(rec.chiu_jain_network > 0.0 && rec.chiu_jain_network <= 1.0 + 1e-12,
             "fairness index out of range");
    c.expect(rec.sum_throughput_bps > 0.0, "throughput must be positive");
  }
  return c.res;
}

}  // namespace

ValidationReport run_validation_suite(std::uint64_t seed, ValidationSizes sizes) {
  if (sizes.num_mus < 2 || sizes.num_bss < 2) {
    throw std::invalid_argument("validation sizes must be at least 2x2");
  }
  ValidationReport report;
  report.checks.push_back(check_channel_scale(seed));
  report.checks.push_back(check_generation(seed, sizes));
  report.checks.push_back(check_utility_shape(seed));
  report.checks.push_back(check_allocation_kkt(seed, sizes));
  report.checks.push_back(check_allocation_dominance(seed, sizes));
  report.checks.push_back(check_allocation_continuity_and_sensitivity(seed, sizes));
  report.checks.push_back(check_objective_consistency(seed, sizes));
  report.checks.push_back(check_objective_bound_chain(seed, sizes));
  report.checks.push_back(check_delta_localization(seed, sizes));
  report.checks.push_back(check_hessian(seed));
  report.checks.push_back(check_msa_solver(seed, sizes));
  report.checks.push_back(check_algorithms(seed, sizes));
  report.checks.push_back(check_rounding(seed));
  report.checks.push_back(check_integrality_witness(seed));
  report.checks.push_back(check_experiment_determinism(seed));
  return report;
}

}  // namespace ssanum
