#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ssanum/matrix.hpp"

namespace ssanum {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

// Downlink scenario parameters. Powers in mW, noise in dBm, distances in
// meters, bandwidth in Hz.
struct ScenarioConfig {
  int num_mus = 0;
  int num_bss = 0;
  double arena_side = 0.0;
  double tx_power_mw = 0.0;
  double noise_dbm = 0.0;
  double pathloss_exponent = 0.0;  // gamma >= 2
  double bandwidth_hz = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct NetworkInstance {
  std::vector<Point> mu_positions;
  std::vector<Point> bs_positions;
  ScenarioConfig config;
};

// num_mus x num_bss, entry (u, b) = link from BS b to MU u.
struct RateMatrix {
  Mat rates;  // bits/s
  Mat sinrs;
};

double dbm_to_mw(double dbm);

// Distance-based gain ||a - b||^-gamma. Coincident points are a domain error.
double pathloss_gain(Point a, Point b, double gamma);

// SINR of the link from BS bs to an MU with the given per-BS received powers
// (mW): signal over (other-cell interference + noise). noise_mw may be 0 when
// interference is present; helper for scale checks and tests.
double sinr_entry(std::span<const double> received_mw, int bs, double noise_mw);

// Uniform i.i.d. layout over [0, arena_side]^2, MUs drawn first, then BSs,
// x before y. Any MU-BS pair closer than 1 m rejects the whole layout and a
// fresh one is drawn from the same stream. Deterministic in config.rng_seed.
NetworkInstance generate_network(const ScenarioConfig& config);

// rate = bandwidth_hz * log2(1 + sinr), entries validated positive & finite.
RateMatrix compute_rate_matrix(const NetworkInstance& instance);

}  // namespace ssanum
