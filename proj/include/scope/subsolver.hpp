#pragma once

#include "scope/objective.hpp"
#include "scope/quadratic.hpp"

namespace scope {

/// Exact least-squares fit on `support` via Cholesky of the normalized Gram
/// block X_A'X_A / n. Ridge damping is added and escalated (x10, starting at
/// 1e-10 when cfg.ridge is 0) only if the factorization is singular; with
/// cfg.max_ridge = 0 a singular block throws SubsolverError immediately.
ParamVector solve_quadratic_restricted(const QuadraticObjective& obj, const SupportSet& support,
                                       const SubsolverConfig& cfg = {});

/// Damped Newton with Armijo backtracking over the coordinates of `support`.
///
/// Starts from `warm` restricted to the support (entries outside dropped,
/// new entries zero) or from zero. Falls back to steepest descent when the
/// objective exposes no Hessian or the damped Hessian cannot be factored.
/// Never accepts a step that increases f. Stops once the restricted gradient
/// is within cfg.grad_tol in sup-norm; otherwise returns the last iterate with
/// subsolver_converged = false. Non-finite values throw SubsolverError.
ParamVector solve_smooth_restricted(const Objective& obj, const SupportSet& support, const SubsolverConfig& cfg,
                                    const ParamVector* warm = nullptr);

}  // namespace scope
