#include "scope/oracle.hpp"

#include "scope/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scope {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

OracleResult brute_force_best_support(const Objective& obj, Index s, std::uint64_t max_supports) {
  const Index p = obj.dimension();
  if (s < 1 || s > p) throw std::invalid_argument("brute_force_best_support: s must be in [1, p]");
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(s));
  if (total > max_supports) {
    throw std::length_error("brute_force_best_support: C(" + std::to_string(p) + ", " + std::to_string(s) + ") = " +
                            std::to_string(total) + " supports exceeds the limit of " + std::to_string(max_supports));
  }

  OracleResult out;
  bool have_best = false;
  std::vector<Index> comb(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    const SupportSet support(comb, p);
    ++out.evaluated_count;
    try {
      ParamVector fit = obj.restricted_minimize(support);
      if (!have_best || *fit.objective < out.best_objective) {
        out.best_objective = *fit.objective;
        out.best_support = support;
        out.best_theta = std::move(fit);
        have_best = true;
      }
    } catch (const SubsolverError&) {
      ++out.failed_count;
    }
    // next combination in lexicographic order
    Index i = s - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == p - s + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (!have_best) throw SolverError("brute_force_best_support: every restricted solve failed");
  return out;
}

double fd_gradient_check(const Objective& obj, const Vector& theta, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_gradient_check: step must be > 0");
  const Vector analytic = obj.gradient(theta);
  if (!analytic.allFinite()) throw std::domain_error("fd_gradient_check: non-finite analytic gradient");
  double worst = 0.0;
  Vector probe = theta;
  for (Index j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + step;
    const double up = obj.value(probe);
    probe[j] = theta[j] - step;
    const double down = obj.value(probe);
    probe[j] = theta[j];
    if (!std::isfinite(up) || !std::isfinite(down)) throw std::domain_error("fd_gradient_check: non-finite objective");
    const double numeric = (up - down) / (2.0 * step);
    worst = std::max(worst, std::abs(analytic[j] - numeric) / std::max(1.0, std::abs(analytic[j])));
  }
  return worst;
}

std::vector<double> gap_decay_diagnostics(const SolveTrace& trace, double f_star) {
  std::vector<double> ratios;
  for (std::size_t t = 0; t + 1 < trace.steps.size(); ++t) {
    const double before = std::abs(trace.steps[t].objective - f_star);
    if (before == 0.0) continue;
    ratios.push_back(std::abs(trace.steps[t + 1].objective - f_star) / before);
  }
  return ratios;
}

RelaxedSparsity relaxed_sparsity_check(const SolveResult& result, const TruthSpec& truth, Index s_star) {
  RelaxedSparsity out;
  out.superset = truth.support.is_subset_of(result.support);
  out.top_sstar_match = hard_threshold_support(result.theta.values, s_star) == truth.support;
  return out;
}

}  // namespace scope
