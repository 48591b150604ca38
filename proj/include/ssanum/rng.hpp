#pragma once

#include <cstdint>
#include <random>

namespace ssanum {

// One splitmix64 step; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seedable generator with reproducible output across platforms.
// mt19937_64 is fully specified by the standard; uniform doubles are drawn
// from the raw 64-bit stream instead of std::uniform_real_distribution,
// whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream k of a master seed: one splitmix64 step over master + k * golden
  // ratio increment. Used to give every Monte Carlo sample its own stream so
  // results do not depend on evaluation order or worker count.
  static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    return splitmix64(s);
  }

  static Rng for_stream(std::uint64_t master, std::uint64_t stream) {
    return Rng(stream_seed(master, stream));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). n must be positive.
  int uniform_int(int n) {
    return static_cast<int>(static_cast<double>(n) * uniform01());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ssanum
