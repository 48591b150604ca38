// Command-line front end: run (Monte Carlo experiment -> CSV), fig1
// (SSA-likeness percentiles of the MSA optimum), validate (invariant suite),
// oracle (exhaustive optimum for desk checks).
//
// Exit codes: 0 success, 1 configuration or usage error, 2 validation failure,
// 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssanum/algorithms.hpp"
#include "ssanum/experiment.hpp"
#include "ssanum/validation.hpp"

namespace {

using namespace ssanum;

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_path,
            const std::optional<std::uint64_t>& seed, bool no_timestamp) {
  ExperimentConfig cfg = load_config(config_path);
  if (seed) cfg.scenario.rng_seed = *seed;
  const std::string out = out_path.value_or(cfg.output_path);
  RunOptions opts;
  opts.emit_timestamp = !no_timestamp;
  const ExperimentResult result = run_experiment(cfg, opts);
  std::ofstream os(out);
  if (!os) throw ConfigError("cannot open output file: " + out);
  write_records_csv(os, cfg, result, opts);
  std::ofstream ss(out + ".summary.csv");
  if (!ss) throw ConfigError("cannot open output file: " + out + ".summary.csv");
  write_summary_csv(ss, cfg, result, opts);
  std::cout << "wrote " << result.records.size() << " records to " << out << " (summary: "
            << out << ".summary.csv)\n";
  return 0;
}

int cmd_fig1(const std::string& config_path, const std::optional<std::string>& out_path,
             const std::optional<std::uint64_t>& seed, bool no_timestamp) {
  ExperimentConfig cfg = load_config(config_path);
  if (seed) cfg.scenario.rng_seed = *seed;
  const std::string out = out_path.value_or(cfg.output_path);
  RunOptions opts;
  opts.emit_timestamp = !no_timestamp;
  const auto rows = run_fig1_analysis(cfg);
  std::ofstream os(out);
  if (!os) throw ConfigError("cannot open output file: " + out);
  write_fig1_csv(os, cfg, rows, opts);
  std::cout << "wrote " << rows.size() << " likeness rows to " << out << "\n";
  return 0;
}

int cmd_validate(std::uint64_t seed, const std::string& sizes_str) {
  ValidationSizes sizes;
  if (!sizes_str.empty()) {
    const auto x = sizes_str.find('x');
    if (x == std::string::npos) throw ConfigError("--sizes expects MUSxBSS, e.g. 6x3");
    try {
      sizes.num_mus = std::stoi(sizes_str.substr(0, x));
      sizes.num_bss = std::stoi(sizes_str.substr(x + 1));
    } catch (...) {
      throw ConfigError("--sizes expects MUSxBSS, e.g. 6x3");
    }
  }
  const ValidationReport report = run_validation_suite(seed, sizes);
  int width = 0;
  for (const CheckResult& c : report.checks) {
    width = std::max(width, static_cast<int>(c.name.size()));
  }
  for (const CheckResult& c : report.checks) {
    std::printf("%-6s %-*s cases=%d failures=%d%s%s\n", c.passed() ? "ok" : "FAIL", width,
                c.name.c_str(), c.cases, c.failures, c.detail.empty() ? "" : "  ",
                c.detail.c_str());
  }
  return report.all_passed() ? 0 : 2;
}

int cmd_oracle(int mus, int bss, double alpha_value, bool alpha_inf,
               const std::string& mode_str, std::uint64_t seed) {
  if (!brute_force_within_cap(mus, bss)) {
    throw ConfigError("oracle: num_bss^num_mus exceeds the 2^20 enumeration cap");
  }
  const Alpha alpha = alpha_inf ? Alpha::infinity() : Alpha(alpha_value);
  const AllocMode mode = alloc_mode_from_string(mode_str);
  ScenarioConfig scen{mus, bss, 1000.0, 1000.0, -90.0, 3.0, 1.2e6, seed};
  const NetworkInstance inst = generate_network(scen);
  const RateMatrix rm = compute_rate_matrix(inst);
  const BruteForceResult best = brute_force_ssa(rm, alpha, mode);
  std::printf("exhaustive optimum, %d MUs x %d BSs, alpha=%s, mode=%s, seed=%llu\n", mus,
              bss, alpha.str().c_str(), mode_str.c_str(),
              static_cast<unsigned long long>(seed));
  std::printf("objective %.12g\n", best.objective);
  for (int u = 0; u < mus; ++u) {
    std::printf("mu %d -> bs %d (rate %.6g bit/s)\n", u, best.assoc.serving_bs(u),
                rm.rates(u, best.assoc.serving_bs(u)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-fair user association experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed_override;
  bool no_timestamp = false;

  CLI::App* run = app.add_subcommand("run", "run the Monte Carlo experiment from a config");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_path, "output CSV path (default: config output_path)");
  run->add_option("--seed", seed_override, "override scenario rng_seed");
  run->add_flag("--no-timestamp", no_timestamp,
                "omit the timestamp header and zero runtime_ms for byte-stable output");

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "percentiles of per-MU SSA-likeness of the MSA optimum");
  fig1->add_option("--config", config_path, "config file")->required();
  fig1->add_option("--out", out_path, "output CSV path (default: config output_path)");
  fig1->add_option("--seed", seed_override, "override scenario rng_seed");
  fig1->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  std::uint64_t val_seed = 1;
  std::string sizes_str;
  CLI::App* validate = app.add_subcommand("validate", "run the library invariant suite");
  validate->add_option("--seed", val_seed, "suite seed");
  validate->add_option("--sizes", sizes_str, "instance sizes as MUSxBSS (default 6x3)");

  int o_mus = 6, o_bss = 3;
  double o_alpha = 1.0;
  std::string o_alpha_str = "1";
  std::string o_mode = "optimal";
  std::uint64_t o_seed = 1;
  CLI::App* oracle = app.add_subcommand("oracle", "print the exhaustive SSA optimum");
  oracle->add_option("--mus", o_mus, "number of MUs")->required();
  oracle->add_option("--bss", o_bss, "number of BSs")->required();
  oracle->add_option("--alpha", o_alpha_str, "fairness alpha (number or 'inf')")->required();
  oracle->add_option("--mode", o_mode, "optimal or uniform")
      ->check(CLI::IsMember({"optimal", "uniform"}));
  oracle->add_option("--seed", o_seed, "scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/usage text
    return code == 0 ? 0 : 1;     // fold CLI11's parse codes into "config error"
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_path, seed_override, no_timestamp);
    if (fig1->parsed()) return cmd_fig1(config_path, out_path, seed_override, no_timestamp);
    if (validate->parsed()) return cmd_validate(val_seed, sizes_str);
    if (oracle->parsed()) {
      bool is_inf = (o_alpha_str == "inf");
      if (!is_inf) {
        try {
          o_alpha = std::stod(o_alpha_str);
        } catch (...) {
          throw ConfigError("oracle: bad --alpha value '" + o_alpha_str + "'");
        }
      }
      return cmd_oracle(o_mus, o_bss, o_alpha, is_inf, o_mode, o_seed);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
