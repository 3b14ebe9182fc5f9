#pragma once

#include "scope/splicing.hpp"

#include <vector>

namespace scope {

/// Shared settings for the hard-thresholding baselines.
struct HTConfig {
  Index s = 1;
  double step = 1.0;  // fixed step size for IHT and GraHTP
  int max_iter = 500;
  double stop_tol = 1e-8;

  void validate(Index p) const;
};

/// Plain IHT from zero: theta <- H_s(theta - step * grad f(theta)), no debiasing.
/// Stops when the support repeats and the sup-norm change is below stop_tol.
SolveResult iht_solve(const Objective& obj, const HTConfig& cfg);

/// Gradient hard thresholding pursuit from zero: gradient step, H_s, then a
/// restricted minimization on the thresholded support.
SolveResult grahtp_solve(const Objective& obj, const HTConfig& cfg);

/// Step-size estimate 1 / (2 M) with M the largest singular value of the
/// Hessian at zero restricted to the top-s gradient support.
double grahtp_default_step(const Objective& obj, Index s);

/// GraHTP with cfg.step replaced by grahtp_default_step.
SolveResult grahtp1_solve(const Objective& obj, HTConfig cfg);

/// One GraHTP run per grid step; keeps the run with the smallest final
/// objective (first grid entry on ties). `selected_step` receives its step.
SolveResult grahtp2_solve(const Objective& obj, HTConfig cfg, const std::vector<double>& grid = {1.0, 1e-1, 1e-2, 1e-3, 1e-4},
                          double* selected_step = nullptr);

/// Gradient support pursuit from zero (CoSaMP-style 2s merge):
/// T = top-2s |grad| ∪ supp(theta), b = argmin on T, theta = argmin on supp(H_s(b)).
SolveResult grasp_solve(const Objective& obj, const HTConfig& cfg);

}  // namespace scope
