#include "scope/baselines.hpp"

#include "scope/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scope {

void HTConfig::validate(Index p) const {
  if (s < 1 || s > p) throw std::invalid_argument("HTConfig: s must be in [1, p]");
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("HTConfig: step must be a positive finite number");
  if (max_iter < 1) throw std::invalid_argument("HTConfig: max_iter must be >= 1");
  if (!(stop_tol >= 0.0)) throw std::invalid_argument("HTConfig: stop_tol must be >= 0");
}

namespace {

class TraceRecorder {
 public:
  TraceRecorder() : start_(std::chrono::steady_clock::now()) {}

  void record(SolveResult& result, int iteration, const ParamVector& theta, int skipped = 0) const {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    result.trace.steps.push_back({iteration, theta.support, theta.restricted_values(), *theta.objective,
                                  std::nullopt, skipped, theta.subsolver_converged ? 0 : 1, ms});
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

ParamVector zero_start(const Objective& obj) {
  ParamVector theta = ParamVector::zeros(obj.dimension());
  theta.objective = obj.value(theta.values);
  if (!std::isfinite(*theta.objective)) throw SolverError("baseline: non-finite objective at zero");
  return theta;
}

bool settled(const ParamVector& prev, const ParamVector& next, double tol) {
  return prev.support == next.support && (next.values - prev.values).lpNorm<Eigen::Infinity>() < tol;
}

ParamVector debias(const Objective& obj, const SupportSet& support, const ParamVector& warm) {
  try {
    ParamVector fit = obj.restricted_minimize(support, &warm);
    if (!std::isfinite(*fit.objective)) throw SolverError("baseline: non-finite objective after debiasing");
    return fit;
  } catch (const SubsolverError& e) {
    throw SolverError(std::string("baseline: restricted solve failed: ") + e.what());
  }
}

}  // namespace

SolveResult iht_solve(const Objective& obj, const HTConfig& cfg) {
  cfg.validate(obj.dimension());
  TraceRecorder rec;
  SolveResult result;
  ParamVector theta = zero_start(obj);
  rec.record(result, 0, theta);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Vector v = theta.values - cfg.step * obj.gradient(theta.values);
    if (!v.allFinite()) throw SolverError("iht_solve: non-finite iterate at iteration " + std::to_string(it));
    const SupportSet keep = hard_threshold_support(v, cfg.s);
    ParamVector next = ParamVector::scatter(keep, gather(v, keep));
    next.objective = obj.value(next.values);
    const bool done = settled(theta, next, cfg.stop_tol);
    theta = std::move(next);
    rec.record(result, it, theta);
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.support = theta.support;
  result.theta = std::move(theta);
  return result;
}

SolveResult grahtp_solve(const Objective& obj, const HTConfig& cfg) {
  cfg.validate(obj.dimension());
  TraceRecorder rec;
  SolveResult result;
  ParamVector theta = zero_start(obj);
  rec.record(result, 0, theta);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Vector v = theta.values - cfg.step * obj.gradient(theta.values);
    if (!v.allFinite()) throw SolverError("grahtp_solve: non-finite iterate at iteration " + std::to_string(it));
    ParamVector next = debias(obj, hard_threshold_support(v, cfg.s), theta);
    const bool done = settled(theta, next, cfg.stop_tol);
    theta = std::move(next);
    rec.record(result, it, theta);
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.support = theta.support;
  result.theta = std::move(theta);
  return result;
}

double grahtp_default_step(const Objective& obj, Index s) {
  const SupportSet start = init_support(obj, s);
  const auto hess = obj.restricted_hessian(start, Vector::Zero(start.size()));
  if (!hess) throw std::invalid_argument("grahtp_default_step: objective has no Hessian");
  const double top = Eigen::JacobiSVD<Matrix>(*hess).singularValues()(0);
  if (!(top > 0.0)) throw SolverError("grahtp_default_step: restricted Hessian at zero vanishes");
  return 1.0 / (2.0 * top);
}

SolveResult grahtp1_solve(const Objective& obj, HTConfig cfg) {
  cfg.step = grahtp_default_step(obj, cfg.s);
  return grahtp_solve(obj, cfg);
}

SolveResult grahtp2_solve(const Objective& obj, HTConfig cfg, const std::vector<double>& grid,
                          double* selected_step) {
  if (grid.empty()) throw std::invalid_argument("grahtp2_solve: empty step grid");
  std::optional<SolveResult> best;
  double best_step = 0.0;
  for (double step : grid) {
    cfg.step = step;
    SolveResult run = grahtp_solve(obj, cfg);
    if (!best || run.objective() < best->objective()) {
      best = std::move(run);
      best_step = step;
    }
  }
  if (selected_step) *selected_step = best_step;
  return std::move(*best);
}

SolveResult grasp_solve(const Objective& obj, const HTConfig& cfg) {
  const Index p = obj.dimension();
  cfg.validate(p);
  if (2 * cfg.s > p) throw std::invalid_argument("grasp_solve: requires 2s <= p");
  TraceRecorder rec;
  SolveResult result;
  ParamVector theta = zero_start(obj);
  rec.record(result, 0, theta);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Vector g = obj.gradient(theta.values);
    if (!g.allFinite()) throw SolverError("grasp_solve: non-finite gradient at iteration " + std::to_string(it));
    std::vector<Index> merged = hard_threshold_support(g, 2 * cfg.s).indices();
    for (Index j : theta.support) {
      if (std::find(merged.begin(), merged.end(), j) == merged.end()) merged.push_back(j);
    }
    const ParamVector wide = debias(obj, SupportSet::from_unsorted(std::move(merged), p), theta);
    ParamVector next = debias(obj, hard_threshold_support(wide.values, cfg.s), wide);
    const bool done = settled(theta, next, cfg.stop_tol);
    theta = std::move(next);
    rec.record(result, it, theta);
    if (done) {
      result.converged = true;
      break;
    }
  }
  result.support = theta.support;
  result.theta = std::move(theta);
  return result;
}

}  // namespace scope
