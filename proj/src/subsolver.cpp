#include "scope/subsolver.hpp"

#include "scope/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace scope {

namespace {

constexpr double kMinRcond = 1e-12;
constexpr double kFirstRidge = 1e-10;
// A few hundred ulps of f: smaller predicted decreases are lost in rounding.
constexpr double kFlatDecrease = 1e-13;

// Cholesky of h + ridge*I with escalation; nullopt once the ceiling is passed.
std::optional<Eigen::LLT<Matrix>> damped_cholesky(const Matrix& h, const SubsolverConfig& cfg) {
  double ridge = cfg.ridge;
  const Matrix eye = Matrix::Identity(h.rows(), h.cols());
  while (true) {
    Eigen::LLT<Matrix> llt(h + ridge * eye);
    if (llt.info() == Eigen::Success && llt.rcond() > kMinRcond) return llt;
    if (cfg.max_ridge <= 0.0) return std::nullopt;
    ridge = ridge > 0.0 ? ridge * 10.0 : kFirstRidge;
    if (ridge > cfg.max_ridge) return std::nullopt;
  }
}

Vector warm_coefficients(const SupportSet& support, const ParamVector* warm) {
  Vector coef = Vector::Zero(support.size());
  if (warm == nullptr) return coef;
  if (warm->values.size() != support.dim()) throw std::invalid_argument("subsolver: warm start has wrong dimension");
  for (Index i = 0; i < support.size(); ++i) coef[i] = warm->values[support[i]];
  return coef;
}

}  // namespace

ParamVector solve_quadratic_restricted(const QuadraticObjective& obj, const SupportSet& support,
                                       const SubsolverConfig& cfg) {
  if (support.dim() != obj.dimension()) throw std::invalid_argument("solve_quadratic_restricted: support dimension");
  Vector coef = Vector::Zero(support.size());
  if (!support.empty()) {
    const auto llt = damped_cholesky(obj.gram_block(support), cfg);
    if (!llt) {
      throw SubsolverError("solve_quadratic_restricted: Gram block on support {" + support.to_string() +
                           "} is singular");
    }
    coef = llt->solve(obj.xty_block(support));
  }
  ParamVector out = ParamVector::scatter(support, coef);
  const double f = obj.restricted_value(support, coef);
  if (!std::isfinite(f) || !coef.allFinite()) throw SubsolverError("solve_quadratic_restricted: non-finite solution");
  out.objective = f;
  return out;
}

ParamVector solve_smooth_restricted(const Objective& obj, const SupportSet& support, const SubsolverConfig& cfg,
                                    const ParamVector* warm) {
  cfg.validate();
  if (support.dim() != obj.dimension()) throw std::invalid_argument("solve_smooth_restricted: support dimension");

  Vector coef = warm_coefficients(support, warm);
  double f = obj.restricted_value(support, coef);
  if (!std::isfinite(f)) throw SubsolverError("solve_smooth_restricted: non-finite objective at the start point");

  bool converged = support.empty();
  for (int iter = 0; !converged; ++iter) {
    const Vector g = obj.restricted_gradient(support, coef);
    if (!g.allFinite()) throw SubsolverError("solve_smooth_restricted: non-finite gradient");
    if (g.lpNorm<Eigen::Infinity>() <= cfg.grad_tol) {
      converged = true;
      break;
    }
    if (iter >= cfg.max_iter) break;

    Vector dir = -g;
    bool newton = false;
    if (auto h = obj.restricted_hessian(support, coef)) {
      if (auto llt = damped_cholesky(*h, cfg)) {
        Vector nd = -llt->solve(g);
        if (nd.allFinite() && g.dot(nd) < 0.0) {
          dir = std::move(nd);
          newton = true;
        }
      }
    }

    // Near the optimum the predicted decrease drops below the resolution of f
    // and Armijo can no longer tell progress from rounding; the full Newton
    // step is then taken as is.
    if (newton && -g.dot(dir) <= kFlatDecrease * std::max(1.0, std::abs(f))) {
      const Vector trial = coef + dir;
      const double ft = obj.restricted_value(support, trial);
      if (std::isfinite(ft)) {
        coef = trial;
        f = ft;
        continue;
      }
    }

    // Armijo backtracking; Newton directions that stall fall back to steepest descent once.
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const double slope = g.dot(dir);
      double step = 1.0;
      for (int bt = 0; bt <= cfg.max_backtracks; ++bt, step *= cfg.shrink) {
        const Vector trial = coef + step * dir;
        const double ft = obj.restricted_value(support, trial);
        if (std::isfinite(ft) && ft <= f + cfg.sufficient_decrease * step * slope) {
          coef = trial;
          f = ft;
          accepted = true;
          break;
        }
      }
      if (!newton) break;
      dir = -g;
      newton = false;
    }
    if (!accepted) break;  // stalled at machine precision
  }

  ParamVector out = ParamVector::scatter(support, coef);
  out.objective = f;
  out.subsolver_converged = converged;
  return out;
}

}  // namespace scope
