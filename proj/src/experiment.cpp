#include "ssanum/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ssanum/rng.hpp"

namespace ssanum {

namespace {

const char* kToolVersion = "1.0.0";
const char* kRateConvention =
    "rate_bps = bandwidth_hz * log2(1 + sinr), powers in mW, natural-log utilities";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    scenario.validate();
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (num_samples < 1) throw ConfigError("num_samples must be >= 1");
  if (alpha_grid.empty()) throw ConfigError("alpha_grid must be non-empty");
  if (algorithms.empty()) throw ConfigError("algorithms must be non-empty");
  if (output_path.empty()) throw ConfigError("output_path must be non-empty");
  for (const AlgoConfig& a : algorithms) {
    if (a.algorithm == AlgorithmKind::BruteForce &&
        !brute_force_within_cap(scenario.num_mus, scenario.num_bss)) {
      throw ConfigError("BruteForce configured but num_bss^num_mus exceeds 2^20");
    }
  }
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  cfg.scenario = {100, 20, 1000.0, 1000.0, -90.0, 3.0, 1.2e6, 1};
  for (double a : {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0}) {
    cfg.alpha_grid.push_back(Alpha(a));
  }
  cfg.alpha_grid.push_back(Alpha::infinity());
  cfg.algorithms = {
      {AlgorithmKind::MSARnd, AllocMode::optimal, Alpha(1.0)},
      {AlgorithmKind::CGA, AllocMode::optimal, Alpha(1.0)},
      {AlgorithmKind::LGA, AllocMode::optimal, Alpha(1.0)},
      {AlgorithmKind::LGAN, AllocMode::uniform, Alpha(1.0)},
      {AlgorithmKind::MinD, AllocMode::uniform, Alpha(1.0)},
      {AlgorithmKind::MaxS, AllocMode::uniform, Alpha(1.0)},
  };
  return cfg;
}

namespace {

struct Token {
  std::string section;  // "" for top level
  std::string key;
  std::string value;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Alpha parse_alpha(const std::string& tok) {
  if (tok == "inf") return Alpha::infinity();
  try {
    return Alpha(parse_double("alpha", tok));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad alpha: ") + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg = default_experiment_config();
  bool saw_grid = false, saw_algos = false;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "solver") {
        throw ConfigError("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "scenario") {
      ScenarioConfig& s = cfg.scenario;
      if (key == "num_mus") s.num_mus = static_cast<int>(parse_int(key, value));
      else if (key == "num_bss") s.num_bss = static_cast<int>(parse_int(key, value));
      else if (key == "arena_side") s.arena_side = parse_double(key, value);
      else if (key == "tx_power_mw") s.tx_power_mw = parse_double(key, value);
      else if (key == "noise_dbm") s.noise_dbm = parse_double(key, value);
      else if (key == "pathloss_exponent") s.pathloss_exponent = parse_double(key, value);
      else if (key == "bandwidth_hz") s.bandwidth_hz = parse_double(key, value);
      else if (key == "rng_seed") s.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
      else throw ConfigError("unknown scenario key: " + key);
    } else if (section == "solver") {
      SolverSettings& s = cfg.solver;
      if (key == "max_iters") s.max_iters = static_cast<int>(parse_int(key, value));
      else if (key == "grad_tol") s.grad_tol = parse_double(key, value);
      else if (key == "obj_tol") s.obj_tol = parse_double(key, value);
      else if (key == "min_share_floor") s.min_share_floor = parse_double(key, value);
      else if (key == "initial_step") s.initial_step = parse_double(key, value);
      else if (key == "backtrack_factor") s.backtrack_factor = parse_double(key, value);
      else if (key == "step_rule") {
        if (value == "fixed") s.step_rule = SolverSettings::StepRule::fixed;
        else if (value == "backtracking") s.step_rule = SolverSettings::StepRule::backtracking;
        else throw ConfigError("step_rule must be fixed or backtracking");
      } else {
        throw ConfigError("unknown solver key: " + key);
      }
    } else {
      if (key == "alpha_grid") {
        if (!saw_grid) {
          cfg.alpha_grid.clear();
          saw_grid = true;
        }
        for (const std::string& tok : split_list(value)) {
          cfg.alpha_grid.push_back(parse_alpha(tok));
        }
      } else if (key == "algorithms") {
        if (!saw_algos) {
          cfg.algorithms.clear();
          saw_algos = true;
        }
        for (const std::string& tok : split_list(value)) {
          const auto colon = tok.find(':');
          AlgoConfig ac;
          try {
            if (colon == std::string::npos) {
              ac.algorithm = algorithm_from_string(tok);
            } else {
              ac.algorithm = algorithm_from_string(tok.substr(0, colon));
              ac.alloc_mode = alloc_mode_from_string(tok.substr(colon + 1));
            }
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
          cfg.algorithms.push_back(ac);
        }
      } else if (key == "num_samples") {
        cfg.num_samples = static_cast<int>(parse_int(key, value));
      } else if (key == "output_path") {
        cfg.output_path = value;
      } else {
        throw ConfigError("unknown key: " + key);
      }
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "alpha_grid =";
  for (const Alpha& a : cfg.alpha_grid) os << ' ' << a.str();
  os << "\nnum_samples = " << cfg.num_samples << "\noutput_path = " << cfg.output_path
     << "\nalgorithms =";
  for (const AlgoConfig& a : cfg.algorithms) {
    os << ' ' << to_string(a.algorithm) << ':' << to_string(a.alloc_mode);
  }
  const ScenarioConfig& s = cfg.scenario;
  os << "\n[scenario]\nnum_mus = " << s.num_mus << "\nnum_bss = " << s.num_bss
     << "\narena_side = " << fmt(s.arena_side) << "\ntx_power_mw = " << fmt(s.tx_power_mw)
     << "\nnoise_dbm = " << fmt(s.noise_dbm)
     << "\npathloss_exponent = " << fmt(s.pathloss_exponent)
     << "\nbandwidth_hz = " << fmt(s.bandwidth_hz) << "\nrng_seed = " << s.rng_seed;
  const SolverSettings& v = cfg.solver;
  os << "\n[solver]\nmax_iters = " << v.max_iters << "\ngrad_tol = " << fmt(v.grad_tol)
     << "\nobj_tol = " << fmt(v.obj_tol) << "\nstep_rule = "
     << (v.step_rule == SolverSettings::StepRule::fixed ? "fixed" : "backtracking")
     << "\nmin_share_floor = " << fmt(v.min_share_floor)
     << "\ninitial_step = " << fmt(v.initial_step)
     << "\nbacktrack_factor = " << fmt(v.backtrack_factor) << "\n";
  return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_config_text(cfg);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

struct Scored {
  double objective;
  double chiu_jain;
  double throughput;
};

Scored score_association(const RateMatrix& rm, const Association& z, Alpha alpha,
                         AllocMode mode) {
  const Allocation alloc =
      mode == AllocMode::optimal ? optimal_allocation(rm, z, alpha) : uniform_allocation(z);
  const std::vector<double> R = downlink_rates(rm, alloc);
  double tput = 0.0;
  for (double v : R) tput += v;
  return {ssa_objective(rm, z, alpha, mode), chiu_jain(R), tput};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  ExperimentResult result;
  const double nan = std::nan("");
  for (int sample = 0; sample < cfg.num_samples; ++sample) {
    ScenarioConfig scen = cfg.scenario;
    scen.rng_seed = Rng::stream_seed(cfg.scenario.rng_seed, sample);
    const NetworkInstance inst = generate_network(scen);
    const RateMatrix rm = compute_rate_matrix(inst);
    for (const Alpha& alpha : cfg.alpha_grid) {
      const bool finite = !alpha.is_infinite();
      MsaSolution msa;
      double fmsa = nan;
      if (finite) {
        const double t0 = now_ms();
        msa = solve_msa(rm, alpha, cfg.solver);
        const double dt = now_ms() - t0;
        fmsa = msa.objective;
        if (!msa.converged) {
          std::cerr << "warning: MSA solver hit max_iters at sample " << sample
                    << " alpha " << alpha.str() << " (kkt residual " << msa.kkt_residual
                    << ")\n";
        }
        const std::vector<double> R = downlink_rates(rm, msa.allocation);
        double tput = 0.0;
        for (double v : R) tput += v;
        ExperimentRecord rec;
        rec.sample_id = sample;
        rec.alpha = alpha;
        rec.algorithm = "MSA";
        rec.alloc_mode = "msa";
        rec.sum_utility = fmsa;
        rec.utility_loss_abs = 0.0;
        rec.utility_loss_rel = 0.0;
        rec.chiu_jain_network = chiu_jain(R);
        rec.sum_throughput_bps = tput;
        rec.runtime_ms = opts.emit_timestamp ? dt : 0.0;
        result.records.push_back(rec);
      }
      for (const AlgoConfig& ac : cfg.algorithms) {
        if (!finite && ac.algorithm == AlgorithmKind::MSARnd) continue;
        const double t0 = now_ms();
        Association z(1, 1);
        switch (ac.algorithm) {
          case AlgorithmKind::CGA: z = run_cga(rm, alpha, ac.alloc_mode); break;
          case AlgorithmKind::LGA: z = run_lga(rm, alpha, ac.alloc_mode); break;
          case AlgorithmKind::LGAN: z = run_lgan(rm, alpha); break;
          case AlgorithmKind::MSARnd: z = msa_round(rm, msa.allocation).assoc; break;
          case AlgorithmKind::MinD: z = run_min_distance(inst); break;
          case AlgorithmKind::MaxS: z = run_max_sinr(rm); break;
          case AlgorithmKind::BruteForce:
            z = brute_force_ssa(rm, alpha, ac.alloc_mode).assoc;
            break;
        }
        const double dt = now_ms() - t0;
        const Scored sc = score_association(rm, z, alpha, ac.alloc_mode);
        ExperimentRecord rec;
        rec.sample_id = sample;
        rec.alpha = alpha;
        rec.algorithm = to_string(ac.algorithm);
        rec.alloc_mode = to_string(ac.alloc_mode);
        rec.sum_utility = sc.objective;
        rec.utility_loss_abs = finite ? fmsa - sc.objective : nan;
        rec.utility_loss_rel =
            (finite && fmsa != 0.0) ? (fmsa - sc.objective) / std::abs(fmsa) : nan;
        rec.chiu_jain_network = sc.chiu_jain;
        rec.sum_throughput_bps = sc.throughput;
        rec.runtime_ms = opts.emit_timestamp ? dt : 0.0;
        result.records.push_back(rec);
      }
    }
  }

  // Summary keyed by grid position and configured algorithm order.
  std::map<std::pair<int, int>, std::vector<const ExperimentRecord*>> groups;
  auto group_key = [&](const ExperimentRecord& r) -> std::pair<int, int> {
    int ai = 0;
    for (std::size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
      if (cfg.alpha_grid[i].str() == r.alpha.str()) {
        ai = static_cast<int>(i);
        break;
      }
    }
    if (r.algorithm == "MSA") return {ai, -1};
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
      if (to_string(cfg.algorithms[i].algorithm) == r.algorithm &&
          to_string(cfg.algorithms[i].alloc_mode) == r.alloc_mode) {
        return {ai, static_cast<int>(i)};
      }
    }
    return {ai, static_cast<int>(cfg.algorithms.size())};
  };
  for (const ExperimentRecord& r : result.records) {
    groups[group_key(r)].push_back(&r);
  }
  auto mean_ci = [](const std::vector<double>& v, double& mean, double& ci) {
    const int n = static_cast<int>(v.size());
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    if (n < 2) {
      ci = 0.0;
      return;
    }
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    ci = 1.96 * sd / std::sqrt(static_cast<double>(n));
  };
  for (const auto& [key, rows] : groups) {
    SummaryRow s;
    s.alpha = rows.front()->alpha;
    s.algorithm = rows.front()->algorithm;
    s.alloc_mode = rows.front()->alloc_mode;
    s.n = static_cast<int>(rows.size());
    std::vector<double> v(rows.size());
    auto fill = [&](auto member) {
      for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i]->*member;
    };
    fill(&ExperimentRecord::sum_utility);
    mean_ci(v, s.mean_sum_utility, s.ci_sum_utility);
    fill(&ExperimentRecord::utility_loss_abs);
    mean_ci(v, s.mean_loss_abs, s.ci_loss_abs);
    fill(&ExperimentRecord::utility_loss_rel);
    mean_ci(v, s.mean_loss_rel, s.ci_loss_rel);
    fill(&ExperimentRecord::chiu_jain_network);
    mean_ci(v, s.mean_chiu_jain, s.ci_chiu_jain);
    fill(&ExperimentRecord::sum_throughput_bps);
    mean_ci(v, s.mean_throughput, s.ci_throughput);
    result.summary.push_back(s);
  }
  return result;
}

namespace {

void write_header_block(std::ostream& out, const ExperimentConfig& cfg,
                        const RunOptions& opts) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  out << "# tool_version: " << kToolVersion << "\n";
  out << "# config_hash: " << hash << "\n";
  out << "# rng_seed: " << cfg.scenario.rng_seed << "\n";
  out << "# rate_convention: " << kRateConvention << "\n";
  if (opts.emit_timestamp) {
    const std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    out << "# timestamp: " << buf << "\n";
  }
}

}  // namespace

void write_records_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentResult& result, const RunOptions& opts) {
  write_header_block(out, cfg, opts);
  out << "sample_id,alpha,algorithm,alloc_mode,sum_utility,utility_loss_abs,"
         "utility_loss_rel,chiu_jain_network,sum_throughput_bps,runtime_ms\n";
  for (const ExperimentRecord& r : result.records) {
    out << r.sample_id << ',' << r.alpha.str() << ',' << r.algorithm << ','
        << r.alloc_mode << ',' << fmt(r.sum_utility) << ',' << fmt(r.utility_loss_abs)
        << ',' << fmt(r.utility_loss_rel) << ',' << fmt(r.chiu_jain_network) << ','
        << fmt(r.sum_throughput_bps) << ',' << fmt(r.runtime_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentResult& result, const RunOptions& opts) {
  write_header_block(out, cfg, opts);
  out << "alpha,algorithm,alloc_mode,n,mean_sum_utility,ci95_sum_utility,"
         "mean_utility_loss_abs,ci95_utility_loss_abs,mean_utility_loss_rel,"
         "ci95_utility_loss_rel,mean_chiu_jain,ci95_chiu_jain,"
         "mean_sum_throughput_bps,ci95_sum_throughput_bps\n";
  for (const SummaryRow& s : result.summary) {
    out << s.alpha.str() << ',' << s.algorithm << ',' << s.alloc_mode << ',' << s.n << ','
        << fmt(s.mean_sum_utility) << ',' << fmt(s.ci_sum_utility) << ','
        << fmt(s.mean_loss_abs) << ',' << fmt(s.ci_loss_abs) << ',' << fmt(s.mean_loss_rel)
        << ',' << fmt(s.ci_loss_rel) << ',' << fmt(s.mean_chiu_jain) << ','
        << fmt(s.ci_chiu_jain) << ',' << fmt(s.mean_throughput) << ','
        << fmt(s.ci_throughput) << '\n';
  }
}

std::vector<LikenessRow> run_fig1_analysis(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<LikenessRow> rows;
  for (const Alpha& alpha : cfg.alpha_grid) {
    if (alpha.is_infinite()) {
      std::cerr << "warning: skipping alpha = inf in likeness analysis (no MSA solve)\n";
      continue;
    }
    LikenessRow row;
    row.alpha = alpha;
    for (int sample = 0; sample < cfg.num_samples; ++sample) {
      ScenarioConfig scen = cfg.scenario;
      scen.rng_seed = Rng::stream_seed(cfg.scenario.rng_seed, sample);
      const NetworkInstance inst = generate_network(scen);
      const RateMatrix rm = compute_rate_matrix(inst);
      const MsaSolution msa = solve_msa(rm, alpha, cfg.solver);
      const SsaLikeness like = msa_ssa_likeness(rm, msa.allocation);
      row.p0 += percentile(like.per_mu, 0.0);
      row.p25 += percentile(like.per_mu, 25.0);
      row.p50 += percentile(like.per_mu, 50.0);
      row.p75 += percentile(like.per_mu, 75.0);
      row.p100 += percentile(like.per_mu, 100.0);
    }
    row.p0 /= cfg.num_samples;
    row.p25 /= cfg.num_samples;
    row.p50 /= cfg.num_samples;
    row.p75 /= cfg.num_samples;
    row.p100 /= cfg.num_samples;
    rows.push_back(row);
  }
  return rows;
}

void write_fig1_csv(std::ostream& out, const ExperimentConfig& cfg,
                    const std::vector<LikenessRow>& rows, const RunOptions& opts) {
  write_header_block(out, cfg, opts);
  out << "alpha,p0,p25,p50,p75,p100\n";
  for (const LikenessRow& r : rows) {
    out << r.alpha.str() << ',' << fmt(r.p0) << ',' << fmt(r.p25) << ',' << fmt(r.p50)
        << ',' << fmt(r.p75) << ',' << fmt(r.p100) << '\n';
  }
}

}  // namespace ssanum
