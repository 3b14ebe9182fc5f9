#include "scope/splicing.hpp"

#include "scope/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scope {

void SpliceConfig::validate(Index p) const {
  const Index k = splice_limit();
  if (!(1 <= k && k <= s && s <= p)) {
    throw std::invalid_argument("SpliceConfig: need 1 <= k_max <= s <= p, got k_max=" + std::to_string(k) +
                                " s=" + std::to_string(s) + " p=" + std::to_string(p));
  }
  if (max_outer_iter < 1) throw std::invalid_argument("SpliceConfig: max_outer_iter must be >= 1");
  if (!(accept_tol >= 0.0)) throw std::invalid_argument("SpliceConfig: accept_tol must be >= 0");
}

std::vector<double> SolveTrace::objectives() const {
  std::vector<double> out;
  out.reserve(steps.size());
  for (const auto& st : steps) out.push_back(st.objective);
  return out;
}

int SolveTrace::soft_failures() const {
  int total = 0;
  for (const auto& st : steps) total += st.soft_failures;
  return total;
}

RelevanceScores relevance_scores(const ParamVector& theta, const Vector& grad) {
  const Index p = theta.support.dim();
  if (grad.size() != p || theta.values.size() != p) {
    throw std::invalid_argument("relevance_scores: gradient has length " + std::to_string(grad.size()) +
                                ", expected " + std::to_string(p));
  }
  RelevanceScores out;
  out.active = theta.support;
  out.inactive = theta.support.complement();
  out.score.resize(static_cast<std::size_t>(p));
  for (Index j : out.active) out.score[static_cast<std::size_t>(j)] = theta.values[j] * theta.values[j];
  for (Index j : out.inactive) out.score[static_cast<std::size_t>(j)] = grad[j] * grad[j];
  return out;
}

ExchangeSets exchange_sets(const RelevanceScores& scores, Index k) {
  const Index limit = std::min<Index>(scores.active.size(), static_cast<Index>(scores.inactive.size()));
  if (k < 1 || k > limit) {
    throw std::invalid_argument("exchange_sets: k=" + std::to_string(k) + " outside [1, " + std::to_string(limit) +
                                "]");
  }
  return {bottom_indices(scores.score, scores.active.indices(), k), top_indices(scores.score, scores.inactive, k)};
}

SupportSet init_support(const Objective& objective, Index s) {
  const Index p = objective.dimension();
  if (s < 1 || s > p) throw std::invalid_argument("init_support: s must be in [1, p]");
  const Vector g = objective.gradient(Vector::Zero(p));
  std::vector<double> xi(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) xi[static_cast<std::size_t>(j)] = g[j] * g[j];
  const auto all = SupportSet::full(p);
  return SupportSet::from_unsorted(top_indices(xi, all.indices(), s), p);
}

SpliceOutcome splice_iteration(const ParamVector& theta, const Objective& objective, const SpliceConfig& cfg) {
  const Index p = objective.dimension();
  cfg.validate(p);
  if (!theta.objective) throw std::invalid_argument("splice_iteration: theta has no objective value");
  if (theta.support.size() != cfg.s) throw std::invalid_argument("splice_iteration: support size differs from s");

  SpliceOutcome out;
  out.next = theta;
  const Index k_limit = std::min({cfg.splice_limit(), cfg.s, p - cfg.s});
  if (k_limit < 1) return out;

  const RelevanceScores scores = relevance_scores(theta, objective.gradient(theta.values));
  // Ranked once; the k-th exchange sets are prefixes of these.
  const ExchangeSets ranked = exchange_sets(scores, k_limit);

  std::optional<ParamVector> best;
  Index best_k = 0;
  int attempted = 0;
  for (Index k = 1; k <= k_limit; ++k) {
    const auto drop = std::span<const Index>(ranked.drop).first(static_cast<std::size_t>(k));
    const auto add = std::span<const Index>(ranked.add).first(static_cast<std::size_t>(k));
    const SupportSet candidate = theta.support.exchange(drop, add);
    ++attempted;
    ParamVector fit;
    try {
      fit = objective.restricted_minimize(candidate, &theta);
    } catch (const SubsolverError&) {
      ++out.skipped_candidates;
      continue;
    }
    if (!fit.subsolver_converged) ++out.soft_failures;
    const double f = *fit.objective;
    if (!std::isfinite(f)) {
      ++out.skipped_candidates;
      continue;
    }
    if (!best || f < *best->objective) {
      best = std::move(fit);
      best_k = k;
    }
  }
  if (!best) {
    throw SolverError("splice_iteration: all " + std::to_string(attempted) + " candidate restricted solves failed");
  }
  if (*best->objective < *theta.objective - cfg.accept_tol) {
    out.next = std::move(*best);
    out.changed = true;
    out.chosen_k = best_k;
  }
  return out;
}

SolveResult scope_solve(const Objective& objective, const SpliceConfig& cfg, const std::optional<SupportSet>& init) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

  const Index p = objective.dimension();
  cfg.validate(p);
  SupportSet support = init ? *init : init_support(objective, cfg.s);
  if (support.dim() != p || support.size() != cfg.s) {
    throw std::invalid_argument("scope_solve: initial support must have cardinality s in dimension p");
  }

  ParamVector theta;
  try {
    theta = objective.restricted_minimize(support);
  } catch (const SubsolverError& e) {
    throw SolverError(std::string("scope_solve: restricted solve on the initial support failed: ") + e.what());
  }
  if (!std::isfinite(*theta.objective)) throw SolverError("scope_solve: non-finite objective on the initial support");

  SolveResult result;
  result.trace.steps.push_back({0, theta.support, theta.restricted_values(), *theta.objective, std::nullopt, 0,
                                theta.subsolver_converged ? 0 : 1, elapsed_ms()});
  for (int t = 1; t <= cfg.max_outer_iter; ++t) {
    SpliceOutcome step = splice_iteration(theta, objective, cfg);
    if (!step.changed) {
      result.converged = true;
      // Non-accepting pass still costs solves; keep its bookkeeping on the last record.
      result.trace.steps.back().skipped_candidates += step.skipped_candidates;
      result.trace.steps.back().soft_failures += step.soft_failures;
      break;
    }
    theta = std::move(step.next);
    result.trace.steps.push_back({t, theta.support, theta.restricted_values(), *theta.objective, step.chosen_k,
                                  step.skipped_candidates, step.soft_failures, elapsed_ms()});
  }
  result.support = theta.support;
  result.theta = std::move(theta);
  return result;
}

}  // namespace scope
