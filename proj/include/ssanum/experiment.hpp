#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssanum/algorithms.hpp"
#include "ssanum/msa_solver.hpp"
#include "ssanum/net_model.hpp"

namespace ssanum {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgoConfig {
  AlgorithmKind algorithm = AlgorithmKind::CGA;
  AllocMode alloc_mode = AllocMode::optimal;
  Alpha alpha{1.0};  // standalone runs; the experiment loop substitutes grid points
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<Alpha> alpha_grid;
  int num_samples = 100;
  std::vector<AlgoConfig> algorithms;
  std::string output_path = "results.csv";
  SolverSettings solver;

  void validate() const;  // throws ConfigError
};

ExperimentConfig default_experiment_config();

// Flat key/value text with [scenario] and [solver] sections; keys mirror the
// field names above. '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical re-serialization of the parsed config, so
// logically identical files hash alike.
std::string canonical_config_text(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct ExperimentRecord {
  int sample_id = 0;
  Alpha alpha{0.0};
  std::string algorithm;
  std::string alloc_mode;
  double sum_utility = 0.0;
  double utility_loss_abs = 0.0;
  double utility_loss_rel = 0.0;
  double chiu_jain_network = 0.0;
  double sum_throughput_bps = 0.0;
  double runtime_ms = 0.0;
};

struct SummaryRow {
  Alpha alpha{0.0};
  std::string algorithm;
  std::string alloc_mode;
  int n = 0;
  double mean_sum_utility = 0.0, ci_sum_utility = 0.0;
  double mean_loss_abs = 0.0, ci_loss_abs = 0.0;
  double mean_loss_rel = 0.0, ci_loss_rel = 0.0;
  double mean_chiu_jain = 0.0, ci_chiu_jain = 0.0;
  double mean_throughput = 0.0, ci_throughput = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // canonical order: sample, grid alpha, algorithm
  std::vector<SummaryRow> summary;        // mean and 95% normal CI half-width
};

struct RunOptions {
  // When false, the timestamp header line is omitted and runtime_ms is
  // written as 0 so identical config + seed reproduce files byte for byte.
  bool emit_timestamp = true;
};

// Per (sample, grid alpha): generate the network from its per-sample stream,
// solve MSA (finite alpha; an "MSA" row records the optimum), then run every
// configured algorithm and score it under its alloc_mode. At alpha = inf the
// MSA baseline and MSARnd are skipped and loss columns are NaN. Solver
// non-convergence warns on stderr and the run continues.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

void write_records_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentResult& result, const RunOptions& opts);
void write_summary_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const ExperimentResult& result, const RunOptions& opts);

// Distribution of per-MU SSA-likeness of the MSA optimum: percentiles
// {0, 25, 50, 75, 100} of the Chiu-Jain index of each MU's rate split,
// averaged over samples, one row per finite grid alpha.
struct LikenessRow {
  Alpha alpha{0.0};
  double p0 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p100 = 0.0;
};
std::vector<LikenessRow> run_fig1_analysis(const ExperimentConfig& cfg);
void write_fig1_csv(std::ostream& out, const ExperimentConfig& cfg,
                    const std::vector<LikenessRow>& rows, const RunOptions& opts);

}  // namespace ssanum
