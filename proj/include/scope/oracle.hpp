#pragma once

#include "scope/datagen.hpp"
#include "scope/splicing.hpp"

#include <cstdint>
#include <vector>

namespace scope {

struct OracleResult {
  SupportSet best_support;
  ParamVector best_theta;
  double best_objective = 0.0;
  std::uint64_t evaluated_count = 0;
  std::uint64_t failed_count = 0;  // supports whose restricted solve threw
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Exhaustive best-subset search: restricted-minimizes every size-s support
/// in lexicographic order and keeps the best (lexicographically first on
/// ties). Refuses with std::length_error when C(p, s) exceeds `max_supports`.
OracleResult brute_force_best_support(const Objective& obj, Index s, std::uint64_t max_supports = 1'000'000);

/// Max over coordinates of |analytic - central difference| / max(1, |analytic|).
/// Throws std::domain_error on non-finite evaluations.
double fd_gradient_check(const Objective& obj, const Vector& theta, double step = 1e-5);

/// Ratios |f_{t+1} - f*| / |f_t - f*| over consecutive trace steps; steps
/// whose denominator is exactly zero are omitted.
std::vector<double> gap_decay_diagnostics(const SolveTrace& trace, double f_star);

struct RelaxedSparsity {
  bool superset = false;         // A* is contained in the recovered support
  bool top_sstar_match = false;  // supp(H_{s*}(theta_hat)) == A*
};

RelaxedSparsity relaxed_sparsity_check(const SolveResult& result, const TruthSpec& truth, Index s_star);

}  // namespace scope
