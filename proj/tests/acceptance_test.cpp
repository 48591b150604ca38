// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL] line;
// the process exits 0 only when every criterion passes. All tolerances and
// runtime budgets are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ssanum/algorithms.hpp"
#include "ssanum/experiment.hpp"
#include "ssanum/msa_solver.hpp"
#include "ssanum/objective.hpp"
#include "ssanum/rng.hpp"

using namespace ssanum;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Outcome {
  bool pass = true;
  int cases = 0;
  std::string note;

  void fail(const std::string& why) {
    pass = false;
    if (note.empty()) note = why;
  }
  void expect(bool ok, const std::string& why) {
    ++cases;
    if (!ok) fail(why);
  }
};

RateMatrix column_rates(const std::vector<double>& r) {
  Mat m(static_cast<int>(r.size()), 1);
  for (size_t u = 0; u < r.size(); ++u) m(static_cast<int>(u), 0) = r[u];
  return RateMatrix{m, m};
}

RateMatrix random_rates(Rng& rng, int mus, int bss, double lo, double hi) {
  Mat m(mus, bss);
  for (int u = 0; u < mus; ++u) {
    for (int b = 0; b < bss; ++b) {
      m(u, b) = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    }
  }
  return RateMatrix{m, m};
}

Association everyone_on_bs0(int mus) {
  return Association::from_serving(std::vector<int>(static_cast<size_t>(mus), 0), 1);
}

std::vector<double> random_simplex(Rng& rng, int n) {
  std::vector<double> y(static_cast<size_t>(n));
  double s = 0.0;
  for (double& v : y) {
    v = -std::log(1.0 - rng.uniform01());
    s += v;
  }
  for (double& v : y) v /= s;
  return y;
}

FractionalAssociation random_fractional(Rng& rng, int mus, int bss) {
  Mat w(mus, bss);
  for (int u = 0; u < mus; ++u) {
    auto row = random_simplex(rng, bss);
    for (int b = 0; b < bss; ++b) w(u, b) = row[static_cast<size_t>(b)];
  }
  return FractionalAssociation{w};
}

ScenarioConfig network_scenario(int mus, int bss, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_mus = mus;
  c.num_bss = bss;
  c.arena_side = 1000.0;
  c.tx_power_mw = 1000.0;
  c.noise_dbm = -90.0;
  c.pathloss_exponent = 3.0;
  c.bandwidth_hz = 1.2e6;
  c.rng_seed = seed;
  return c;
}

// ---------------------------------------------------------------- criterion 1
Outcome closed_form_is_stationary_and_dominant() {
  Outcome out;
  Rng rng(101);
  const std::vector<Alpha> alphas = {Alpha(0.25), Alpha(0.5), Alpha(2.0), Alpha(3.0),
                                     Alpha::infinity()};
  for (int i = 0; i < 500; ++i) {
    const Alpha alpha = alphas[static_cast<size_t>(i) % alphas.size()];
    const int mus = 2 + rng.uniform_int(5);
    std::vector<double> r(static_cast<size_t>(mus));
    for (double& v : r) v = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const RateMatrix rm = column_rates(r);
    const Association assoc = everyone_on_bs0(mus);
    const Allocation opt = optimal_allocation(rm, assoc, alpha);
    const double spread = kkt_stationarity_spread(rm, assoc, alpha, opt);
    out.expect(spread < 1e-6, "stationarity spread " + std::to_string(spread));

    std::vector<double> served(static_cast<size_t>(mus));
    for (int u = 0; u < mus; ++u) served[static_cast<size_t>(u)] = r[static_cast<size_t>(u)] * opt.shares(u, 0);
    const double best = sum_utility(alpha, served);
    for (int k = 0; k < 200; ++k) {
      const auto y = random_simplex(rng, mus);
      std::vector<double> rv(static_cast<size_t>(mus));
      for (int u = 0; u < mus; ++u) rv[static_cast<size_t>(u)] = r[static_cast<size_t>(u)] * y[static_cast<size_t>(u)];
      const double f = sum_utility(alpha, rv);
      out.expect(best >= f - 1e-9, "random allocation beat the closed form");
      if (!out.pass) return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome sensitivity_signs_flip_at_one() {
  Outcome out;
  Rng rng(102);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> r = {rng.uniform(0.5, 8.0), rng.uniform(0.5, 8.0)};
    const RateMatrix rm = column_rates(r);
    const Association assoc = everyone_on_bs0(2);
    const int mu = rng.uniform_int(2);
    const double h = r[static_cast<size_t>(mu)] * 1e-5;
    const double lo = allocation_rate_sensitivity(rm, assoc, Alpha(0.5), mu, h);
    const double at1 = allocation_rate_sensitivity(rm, assoc, Alpha(1.0), mu, h);
    const double hi = allocation_rate_sensitivity(rm, assoc, Alpha(2.0), mu, h);
    out.expect(lo > 0.0, "share should grow with own rate below alpha 1");
    out.expect(std::abs(at1) < 1e-9, "alpha 1 derivative not ~0");
    out.expect(hi < 0.0, "share should shrink with own rate above alpha 1");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome objective_routes_agree() {
  Outcome out;
  Rng rng(103);
  const std::vector<Alpha> alphas = {Alpha(0.0), Alpha(0.25), Alpha(0.5), Alpha(1.0),
                                     Alpha(1.5), Alpha(2.0), Alpha(3.0),
                                     Alpha::infinity()};
  for (int i = 0; i < 500; ++i) {
    const int mus = 3 + rng.uniform_int(5);
    const int bss = 2 + rng.uniform_int(3);
    const RateMatrix rm = random_rates(rng, mus, bss, 0.3, 30.0);
    std::vector<int> serving(static_cast<size_t>(mus));
    for (int& s : serving) s = rng.uniform_int(bss);
    const Association assoc = Association::from_serving(serving, bss);
    for (const Alpha& alpha : alphas) {
      for (AllocMode mode : {AllocMode::optimal, AllocMode::uniform}) {
        const double f = ssa_objective(rm, assoc, alpha, mode);
        const Allocation alloc = mode == AllocMode::optimal
                                     ? optimal_allocation(rm, assoc, alpha)
                                     : uniform_allocation(assoc);
        const double g = msa_objective(rm, alloc, alpha);
        const double rel = std::abs(f - g) / std::max({std::abs(f), std::abs(g), 1.0});
        out.expect(rel < 1e-8, "route mismatch at alpha " + alpha.str());
      }
    }
    const double fo = ssa_objective(rm, assoc, Alpha(1.0), AllocMode::optimal);
    const double fu = ssa_objective(rm, assoc, Alpha(1.0), AllocMode::uniform);
    out.expect(fo == fu, "modes must coincide exactly at alpha 1");
    if (!out.pass) return out;
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome solver_matches_closed_form_and_bounds_associations() {
  Outcome out;
  // one-BS instances: the solver must land on the closed form
  for (int mus = 1; mus <= 4; ++mus) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const NetworkInstance inst = generate_network(network_scenario(mus, 1, seed));
      const RateMatrix rm = compute_rate_matrix(inst);
      for (double av : {0.5, 1.0, 2.0, 3.0}) {
        const Alpha alpha(av);
        const MsaSolution sol = solve_msa(rm, alpha);
        out.expect(sol.converged, "solver did not converge on a one-BS instance");
        out.expect(sol.ascent_violation == 0.0, "objective decreased along an accepted step");
        out.expect(sol.feasibility_violation < 1e-9, "iterate left the simplex");
        const Allocation closed = optimal_allocation(rm, everyone_on_bs0(mus), alpha);
        for (int u = 0; u < mus; ++u) {
          out.expect(std::abs(sol.allocation.shares(u, 0) - closed.shares(u, 0)) < 1e-5,
                     "share differs from the closed form by more than 1e-5");
        }
      }
    }
  }
  // relaxation upper-bounds every association
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NetworkInstance inst = generate_network(network_scenario(10, 3, 100 + seed));
    const RateMatrix rm = compute_rate_matrix(inst);
    for (double av : {0.5, 1.0, 2.0}) {
      const Alpha alpha(av);
      const MsaSolution sol = solve_msa(rm, alpha);
      out.expect(sol.ascent_violation == 0.0, "objective decreased along an accepted step");
      out.expect(sol.feasibility_violation < 1e-9, "iterate left the simplex");
      for (AllocMode mode : {AllocMode::optimal, AllocMode::uniform}) {
        const BruteForceResult bf = brute_force_ssa(rm, alpha, mode);
        const double slack = 1e-6 * std::max(1.0, std::abs(sol.objective));
        out.expect(sol.objective + slack >= bf.objective,
                   "an association beat the relaxation optimum");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome rounding_keeps_jensen_direction() {
  Outcome out;
  Rng rng(105);
  for (int i = 0; i < 200; ++i) {
    const bool wide = (i % 2 == 0);
    const int mus = wide ? 4 : 3;
    const int bss = wide ? 2 : 3;
    const RateMatrix rm = random_rates(rng, mus, bss, 0.5, 8.0);
    const FractionalAssociation x = random_fractional(rng, mus, bss);
    for (AllocMode mode : {AllocMode::optimal, AllocMode::uniform}) {
      for (double av : {0.0, 0.5, 1.0, 1.5}) {
        const auto res = rounding_expectation_check(rm, x, Alpha(av), mode);
        out.expect(res.direction_ok && res.expectation >= res.relaxed_value - 1e-9,
                   "expected E >= f below alpha 2, alpha " + std::to_string(av));
      }
      const auto eq = rounding_expectation_check(rm, x, Alpha(2.0), mode);
      out.expect(eq.direction_ok &&
                     std::abs(eq.expectation - eq.relaxed_value) < 1e-9,
                 "expected E == f at alpha 2");
      for (double av : {3.0, 5.0}) {
        const auto res = rounding_expectation_check(rm, x, Alpha(av), mode);
        out.expect(res.direction_ok && res.expectation <= res.relaxed_value + 1e-9,
                   "expected E <= f above alpha 2, alpha " + std::to_string(av));
      }
    }
    if (!out.pass) return out;
  }
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome msa_optimum_is_mostly_single_station() {
  Outcome out;
  ExperimentConfig cfg = default_experiment_config();
  cfg.num_samples = 20;
  cfg.alpha_grid.clear();
  for (double a : {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0}) {
    cfg.alpha_grid.push_back(Alpha(a));
  }
  const auto rows = run_fig1_analysis(cfg);
  out.expect(rows.size() == cfg.alpha_grid.size(), "missing likeness rows");
  const double single = 1.0 / cfg.scenario.num_bss;  // 0.05 at 20 BSs
  for (const auto& row : rows) {
    out.expect(std::abs(row.p75 - single) < 5e-3,
               "75th percentile off 0.05 at alpha " + row.alpha.str() + ": " +
                   std::to_string(row.p75));
    out.expect(std::abs(row.p50 - single) < 1e-6,
               "median off 0.05 at alpha " + row.alpha.str() + ": " +
                   std::to_string(row.p50));
  }
  return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome utility_loss_ordering_holds() {
  Outcome out;
  ExperimentConfig cfg = default_experiment_config();
  cfg.num_samples = 30;
  cfg.alpha_grid = {Alpha(0.5), Alpha(1.0), Alpha(2.0)};
  const ExperimentResult result = run_experiment(cfg, RunOptions{false});

  struct Stat {
    double mean = 0.0, ci = 0.0;
  };
  std::map<std::string, std::map<std::string, Stat>> loss;  // alpha -> algo -> stat
  for (const auto& row : result.summary) {
    if (row.algorithm == "MSA") continue;
    loss[row.alpha.str()][row.algorithm] = {row.mean_loss_abs, row.ci_loss_abs};
  }
  // A must not lose more than B unless the confidence intervals overlap
  auto ordered = [&](const Stat& a, const Stat& b) {
    return a.mean <= b.mean || a.mean - a.ci <= b.mean + b.ci;
  };
  for (const auto& [alpha, per_algo] : loss) {
    const Stat msarnd = per_algo.at("MSARnd");
    const Stat cga = per_algo.at("CGA");
    const Stat lga = per_algo.at("LGA");
    out.expect(ordered(msarnd, cga), "MSARnd lost more than CGA at alpha " + alpha);
    out.expect(ordered(cga, lga), "CGA lost more than LGA at alpha " + alpha);
    for (const char* naive : {"LGAN", "MinD", "MaxS"}) {
      const Stat n = per_algo.at(naive);
      out.expect(ordered(msarnd, n),
                 std::string("MSARnd lost more than ") + naive + " at alpha " + alpha);
      out.expect(ordered(cga, n),
                 std::string("CGA lost more than ") + naive + " at alpha " + alpha);
      out.expect(ordered(lga, n),
                 std::string("LGA lost more than ") + naive + " at alpha " + alpha);
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome alloc_modes_coincide_at_alpha_one() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const NetworkInstance inst = generate_network(network_scenario(50, 10, 200 + seed));
    const RateMatrix rm = compute_rate_matrix(inst);
    std::vector<Association> assocs;
    assocs.push_back(run_lgan(rm, Alpha(1.0)));
    assocs.push_back(run_min_distance(inst));
    for (double av : {0.5, 1.0, 2.0}) {
      const MsaSolution sol = solve_msa(rm, Alpha(av));
      assocs.push_back(msa_round(rm, sol.allocation).assoc);
    }
    for (const Association& z : assocs) {
      const double uo = ssa_objective(rm, z, Alpha(1.0), AllocMode::optimal);
      const double uu = ssa_objective(rm, z, Alpha(1.0), AllocMode::uniform);
      out.expect(std::abs(uo - uu) < 1e-9, "modes differ at alpha 1");
      for (double av : {0.5, 2.0}) {
        const double fo = ssa_objective(rm, z, Alpha(av), AllocMode::optimal);
        const double fu = ssa_objective(rm, z, Alpha(av), AllocMode::uniform);
        out.expect(fo >= fu - 1e-8,
                   "optimal split scored below the equal split at alpha " +
                       std::to_string(av));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome product_floor_candidate_wins_with_known_slope() {
  Outcome out;
  const std::vector<std::pair<double, double>> rates = {{4.0, 1.0}, {2.0, 3.0}, {5.0, 5.0}};
  const std::vector<double> epss = {1e-2, 1e-4, 1e-6};
  for (double av : {1.5, 2.0, 3.0}) {
    for (const auto& [ra, rb] : rates) {
      std::vector<double> logj;
      for (double eps : epss) {
        const auto res = epsilon_gp_two_bs_one_mu(ra, rb, Alpha(av), eps);
        out.expect(res.minimizer == 0,
                   "product-floor candidate did not minimize at alpha " +
                       std::to_string(av));
        logj.push_back(std::log(res.objective_values[0]));
      }
      // log J grows linearly in log(1/eps) with slope (alpha-1)/2
      const double slope =
          (logj[2] - logj[0]) / (std::log(1e6) - std::log(1e2));
      const double want = (av - 1.0) / 2.0;
      out.expect(std::abs(slope - want) <= 0.05 * want,
                 "growth slope " + std::to_string(slope) + " != " + std::to_string(want));
    }
  }
  return out;
}

// --------------------------------------------------------------- criterion 10
Outcome greedy_stays_near_the_oracle() {
  Outcome out;
  // regression floor recorded from the seeded oracle run below
  // (observed mean 0.997447 over 300 cases, seeds 301..400)
  const double kGoldenMeanRatio = 0.995;
  double sum_ratio = 0.0;
  int n = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const NetworkInstance inst = generate_network(network_scenario(6, 3, 300 + seed));
    const RateMatrix rm = compute_rate_matrix(inst);
    for (double av : {0.5, 1.0, 2.0}) {
      const Alpha alpha(av);
      const double fbf = brute_force_ssa(rm, alpha, AllocMode::optimal).objective;
      const double fcga =
          ssa_objective(rm, run_cga(rm, alpha, AllocMode::optimal), alpha,
                        AllocMode::optimal);
      double ratio;
      if (fbf > 0.0) ratio = fcga / fbf;          // both positive, fcga <= fbf
      else if (fbf < 0.0) ratio = fbf / fcga;     // both negative, |fbf| <= |fcga|
      else ratio = (fcga == 0.0) ? 1.0 : 0.0;
      sum_ratio += ratio;
      worst = std::min(worst, ratio);
      ++n;
    }
  }
  const double mean = sum_ratio / n;
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean ratio %.6f, worst %.6f over %d cases", mean,
                worst, n);
  out.note = buf;
  out.expect(mean >= 0.95, "mean oracle ratio below 0.95");
  out.expect(mean >= kGoldenMeanRatio, "mean oracle ratio regressed below the floor");
  return out;
}

// --------------------------------------------------------------- criterion 11
Outcome cli_reruns_are_byte_identical() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ssanum_accept";
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "accept.cfg";
  const fs::path out_a = dir / "a.csv";
  const fs::path out_b = dir / "b.csv";
  {
    std::ofstream cfg(cfg_path);
    cfg << "alpha_grid = 0.5 1 inf\n"
        << "num_samples = 2\n"
        << "algorithms = MSARnd:optimal CGA:optimal LGAN:uniform\n"
        << "output_path = " << out_a.string() << "\n"
        << "[scenario]\n"
        << "num_mus = 8\nnum_bss = 3\narena_side = 1000\ntx_power_mw = 1000\n"
        << "noise_dbm = -90\npathloss_exponent = 3\nbandwidth_hz = 1.2e6\nrng_seed = 11\n";
  }
  auto run_cli = [&](const fs::path& target) {
    const std::string cmd = std::string("\"") + SSANUM_CLI_PATH + "\" run --config " +
                            cfg_path.string() + " --out " + target.string() +
                            " --no-timestamp > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  out.expect(run_cli(out_a) == 0, "first CLI run failed");
  out.expect(run_cli(out_b) == 0, "second CLI run failed");
  const std::string a = slurp(out_a), b = slurp(out_b);
  out.expect(!a.empty(), "first run wrote an empty records file");
  out.expect(a == b, "records CSVs differ between identical runs");
  const std::string sa = slurp(fs::path(out_a.string() + ".summary.csv"));
  const std::string sb = slurp(fs::path(out_b.string() + ".summary.csv"));
  out.expect(!sa.empty(), "first run wrote an empty summary file");
  out.expect(sa == sb, "summary CSVs differ between identical runs");
  return out;
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*fn)();
  double budget_s;  // 0 = no explicit budget
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form allocation is stationary and beats random splits",
       closed_form_is_stationary_and_dominant, 5.0},
      {2, "share sensitivity signs are +/0/- around alpha 1",
       sensitivity_signs_flip_at_one, 1.0},
      {3, "formula and allocation objective routes agree in every regime",
       objective_routes_agree, 0.0},
      {4, "solver reproduces the closed form and upper-bounds associations",
       solver_matches_closed_form_and_bounds_associations, 0.0},
      {5, "randomized rounding keeps the Jensen direction by alpha regime",
       rounding_keeps_jensen_direction, 30.0},
      {6, "relaxation optimum is single-station for most users",
       msa_optimum_is_mostly_single_station, 600.0},
      {7, "mean utility-loss ordering across algorithms",
       utility_loss_ordering_holds, 0.0},
      {8, "allocation modes coincide at alpha 1 and optimal dominates",
       alloc_modes_coincide_at_alpha_one, 0.0},
      {9, "product-floor candidate minimizes with slope (alpha-1)/2",
       product_floor_candidate_wins_with_known_slope, 0.0},
      {10, "greedy stays near the exhaustive oracle",
       greedy_stays_near_the_oracle, 0.0},
      {11, "CLI reruns with suppressed timestamps are byte-identical",
       cli_reruns_are_byte_identical, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const double t0 = now_s();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double dt = now_s() - t0;
    if (c.budget_s > 0.0 && dt > c.budget_s) {
      out.fail("runtime " + std::to_string(dt) + " s over budget " +
               std::to_string(c.budget_s) + " s");
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%d checks, %.2f s)%s%s\n",
                out.pass ? "PASS" : "FAIL", c.id, c.title, out.cases, dt,
                out.note.empty() ? "" : " -- ", out.note.c_str());
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
