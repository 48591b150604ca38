#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssanum {

struct CheckResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string detail;  // first failure or a summary statistic
  bool passed() const { return failures == 0; }
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const CheckResult& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }
};

struct ValidationSizes {
  int num_mus = 6;
  int num_bss = 3;
};

// Exercises every library invariant at the given sizes: channel-model scale
// checks, utility shape, closed-form allocation KKT and dominance tests,
// objective consistency between the formula and allocation routes, solver
// ascent/feasibility/KKT, algorithm determinism and bounds, the rounding
// Jensen directions, and experiment determinism.
ValidationReport run_validation_suite(std::uint64_t seed, ValidationSizes sizes = {});

}  // namespace ssanum
