#include "ssanum/net_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssanum/rng.hpp"

namespace ssanum {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ScenarioConfig::validate() const {
  if (num_mus < 1) throw std::invalid_argument("num_mus must be >= 1");
  if (num_bss < 1) throw std::invalid_argument("num_bss must be >= 1");
  if (!(arena_side > 0.0)) throw std::invalid_argument("arena_side must be > 0");
  if (!(tx_power_mw > 0.0)) throw std::invalid_argument("tx_power_mw must be > 0");
  if (std::isnan(noise_dbm) || noise_dbm == std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("noise_dbm must be finite or -inf");
  }
  if (!(pathloss_exponent >= 2.0)) {
    throw std::invalid_argument("pathloss_exponent must be >= 2");
  }
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth_hz must be > 0");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double pathloss_gain(Point a, Point b, double gamma) {
  const double d = distance(a, b);
  if (d == 0.0) throw std::domain_error("pathloss_gain: coincident points");
  return std::pow(d, -gamma);
}

double sinr_entry(std::span<const double> received_mw, int bs, double noise_mw) {
  if (bs < 0 || bs >= static_cast<int>(received_mw.size())) {
    throw std::invalid_argument("sinr_entry: bs out of range");
  }
  double interference = 0.0;
  for (int a = 0; a < static_cast<int>(received_mw.size()); ++a) {
    if (a != bs) interference += received_mw[a];
  }
  const double denom = interference + noise_mw;
  if (!(denom > 0.0)) throw std::domain_error("sinr_entry: zero interference plus noise");
  return received_mw[bs] / denom;
}

NetworkInstance generate_network(const ScenarioConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  NetworkInstance inst;
  inst.config = config;
  constexpr double kMinSeparation = 1.0;
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    inst.mu_positions.clear();
    inst.bs_positions.clear();
    for (int u = 0; u < config.num_mus; ++u) {
      const double x = rng.uniform(0.0, config.arena_side);
      const double y = rng.uniform(0.0, config.arena_side);
      inst.mu_positions.push_back({x, y});
    }
    for (int b = 0; b < config.num_bss; ++b) {
      const double x = rng.uniform(0.0, config.arena_side);
      const double y = rng.uniform(0.0, config.arena_side);
      inst.bs_positions.push_back({x, y});
    }
    bool ok = true;
    for (const Point& mu : inst.mu_positions) {
      for (const Point& bs : inst.bs_positions) {
        if (distance(mu, bs) < kMinSeparation) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return inst;
  }
  throw std::runtime_error("generate_network: could not satisfy 1 m separation");
}

RateMatrix compute_rate_matrix(const NetworkInstance& instance) {
  const ScenarioConfig& cfg = instance.config;
  cfg.validate();
  const int U = static_cast<int>(instance.mu_positions.size());
  const int B = static_cast<int>(instance.bs_positions.size());
  if (U != cfg.num_mus || B != cfg.num_bss) {
    throw std::invalid_argument("compute_rate_matrix: position counts mismatch config");
  }
  const double noise_mw = dbm_to_mw(cfg.noise_dbm);  // -inf dBm -> 0 mW
  RateMatrix rm{Mat(U, B), Mat(U, B)};
  std::vector<double> received(B);
  for (int u = 0; u < U; ++u) {
    for (int b = 0; b < B; ++b) {
      received[b] = cfg.tx_power_mw *
                    pathloss_gain(instance.bs_positions[b], instance.mu_positions[u],
                                  cfg.pathloss_exponent);
    }
    for (int b = 0; b < B; ++b) {
      const double sinr = sinr_entry(received, b, noise_mw);
      const double rate = cfg.bandwidth_hz * std::log2(1.0 + sinr);
      if (!std::isfinite(sinr) || !(sinr > 0.0) || !std::isfinite(rate) || !(rate > 0.0)) {
        throw std::runtime_error("compute_rate_matrix: non-positive or non-finite entry");
      }
      rm.sinrs(u, b) = sinr;
      rm.rates(u, b) = rate;
    }
  }
  return rm;
}

}  // namespace ssanum
