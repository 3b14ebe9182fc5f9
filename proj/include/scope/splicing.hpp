#pragma once

#include "scope/objective.hpp"

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace scope {

/// Relevance of every coordinate given a restricted minimizer: squared
/// coefficient on the active set, squared gradient on the inactive set.
/// Scores are dense over [0, p); membership in `active` says which rule applied.
struct RelevanceScores {
  SupportSet active;
  std::vector<Index> inactive;  // ascending complement of `active`
  std::vector<double> score;    // length p

  double operator[](Index j) const { return score[static_cast<std::size_t>(j)]; }
};

struct SpliceConfig {
  Index s = 1;
  std::optional<Index> k_max;  // defaults to s
  int max_outer_iter = 100;
  double accept_tol = 0.0;

  /// k_max with the default resolved.
  Index splice_limit() const { return k_max.value_or(s); }
  /// Throws std::invalid_argument unless 1 <= k_max <= s <= p and max_outer_iter >= 1.
  void validate(Index p) const;
};

struct TraceStep {
  int iteration = 0;
  SupportSet support;
  Vector coefficients;  // values on `support`
  double objective = 0.0;
  std::optional<Index> chosen_k;
  int skipped_candidates = 0;  // restricted solves that threw
  int soft_failures = 0;       // restricted solves that hit max_iter / stalled
  double wall_ms = 0.0;        // since the start of the solve
};

struct SolveTrace {
  std::vector<TraceStep> steps;

  std::vector<double> objectives() const;
  int soft_failures() const;
};

struct SolveResult {
  ParamVector theta;
  SupportSet support;
  SolveTrace trace;
  bool converged = false;

  /// Outer iterations performed after the initial fit.
  int outer_iterations() const { return trace.steps.empty() ? 0 : static_cast<int>(trace.steps.size()) - 1; }
  double objective() const { return theta.objective.value_or(std::numeric_limits<double>::quiet_NaN()); }
};

struct SpliceOutcome {
  ParamVector next;
  bool changed = false;
  std::optional<Index> chosen_k;
  int skipped_candidates = 0;
  int soft_failures = 0;
};

/// Throws std::invalid_argument unless grad has length p.
RelevanceScores relevance_scores(const ParamVector& theta, const Vector& grad);

/// The k active coordinates with the smallest scores and the k inactive ones
/// with the largest, each ordered by rank; ties go to the lower index, so the
/// sets for k are prefixes of the sets for k + 1.
struct ExchangeSets {
  std::vector<Index> drop;
  std::vector<Index> add;
};
ExchangeSets exchange_sets(const RelevanceScores& scores, Index k);

/// The s coordinates with the largest squared gradient at zero.
SupportSet init_support(const Objective& objective, Index s);

/// One outer splicing step from `theta` (a restricted minimizer with a populated objective).
///
/// Every swap size k = 1..min(k_max, s, p - s) is evaluated; the candidate
/// with the lowest objective wins, smallest k on ties, and it replaces theta
/// only when it beats f(theta) - accept_tol. Candidates whose restricted solve
/// throws are skipped and counted; if all of them throw, SolverError.
SpliceOutcome splice_iteration(const ParamVector& theta, const Objective& objective, const SpliceConfig& cfg);

/// Runs splice_iteration from `init` (default init_support) until no candidate
/// improves or max_outer_iter is reached.
SolveResult scope_solve(const Objective& objective, const SpliceConfig& cfg,
                        const std::optional<SupportSet>& init = std::nullopt);

}  // namespace scope
