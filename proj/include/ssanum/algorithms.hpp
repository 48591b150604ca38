#pragma once

#include <cstdint>
#include <string>

#include "ssanum/allocation.hpp"
#include "ssanum/msa_solver.hpp"
#include "ssanum/net_model.hpp"
#include "ssanum/objective.hpp"

namespace ssanum {

enum class AlgorithmKind { CGA, LGA, LGAN, MSARnd, MinD, MaxS, BruteForce };

std::string to_string(AlgorithmKind kind);
AlgorithmKind algorithm_from_string(const std::string& name);
std::string to_string(AllocMode mode);
AllocMode alloc_mode_from_string(const std::string& name);

// Centralized greedy: repeatedly assigns the (MU, BS) pair with the largest
// objective delta; ties go to the lowest (MU, BS) lexicographically. Deltas
// are recomputed every iteration against the growing partial association.
Association run_cga(const RateMatrix& rates, Alpha alpha, AllocMode mode);

// Localized greedy: rounds of request (every unassigned MU picks the BS with
// its best delta, ties lowest BS) and grant (every requested BS admits the
// requester with the best delta at that BS, ties lowest MU). One grant per
// BS per round, so at most num_mus rounds.
Association run_lga(const RateMatrix& rates, Alpha alpha, AllocMode mode);

// Rate-agnostic localized greedy: MUs request the BS maximizing
// U_alpha(r_ua / (load_a + 1)) using only their own rate row (utility is
// increasing, so this is argmax of r_ua / (load_a + 1) for every alpha);
// each requested BS grants its lowest-index requester and its load grows.
// The induced allocation is always uniform.
Association run_lgan(const RateMatrix& rates, Alpha alpha);

// Rounds an MSA allocation to an association: each MU goes to
// argmax_b rates(u, b) * y(u, b), ties lowest BS. An all-zero row falls back
// to the MU's max-rate BS and is counted.
struct MsaRounding {
  Association assoc;
  int zero_row_fallbacks = 0;
};
MsaRounding msa_round(const RateMatrix& rates, const Allocation& msa_alloc);

Association run_min_distance(const NetworkInstance& instance);
Association run_max_sinr(const RateMatrix& rates);

// True when num_bss^num_mus <= 2^20, the enumeration cap.
bool brute_force_within_cap(int num_mus, int num_bss);

// Exhaustive SSA optimum. Assignments are enumerated in lexicographic order
// of the per-MU BS vector and ties keep the earliest, so the result is
// deterministic. Throws when over the enumeration cap.
struct BruteForceResult {
  Association assoc;
  double objective;
};
BruteForceResult brute_force_ssa(const RateMatrix& rates, Alpha alpha, AllocMode mode);

// Samples one association with P(MU u -> BS b) = x(u, b), rows independent.
Association randomized_round(const FractionalAssociation& x, std::uint64_t seed);

// Exact E[f(Z)] of randomized rounding by enumerating every outcome with its
// product probability, against the relaxed objective at x. direction_ok
// encodes the Jensen comparison: E >= f(x) for alpha in [0, 2), equality at
// alpha = 2, E <= f(x) above (each with 1e-9 slack).
struct RoundingExpectation {
  double expectation = 0.0;
  double relaxed_value = 0.0;
  double max_support_value = 0.0;  // best integer objective with positive probability
  bool direction_ok = false;
};
RoundingExpectation rounding_expectation_check(const RateMatrix& rates,
                                               const FractionalAssociation& x,
                                               Alpha alpha, AllocMode mode);

}  // namespace ssanum
