#pragma once

#include "scope/support.hpp"

#include <optional>

namespace scope {

/// Settings for the smooth restricted solver (damped Newton with backtracking).
struct SubsolverConfig {
  double grad_tol = 1e-8;  // sup-norm of the restricted gradient
  int max_iter = 100;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 60;
  double ridge = 0.0;      // initial Hessian damping
  double max_ridge = 1e-2; // escalation ceiling (x10 per failure); 0 disables escalation

  void validate() const;
};

/// Differentiable objective f: R^p -> R.
///
/// Implementations are immutable after construction and may be shared
/// read-only across concurrent solves. The restricted entry points take the
/// coefficients on a support (ordered like the support) so implementations
/// can avoid full-dimension work; the defaults scatter into a dense vector.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& theta) const = 0;
  virtual Vector gradient(const Vector& theta) const = 0;

  virtual double restricted_value(const SupportSet& support, const Vector& coef) const;
  virtual Vector restricted_gradient(const SupportSet& support, const Vector& coef) const;

  /// Dense |support| x |support| Hessian block; nullopt when the objective has no Hessian.
  virtual std::optional<Matrix> restricted_hessian(const SupportSet& support, const Vector& coef) const;

  /// argmin f(theta) subject to supp(theta) = support. The default routes
  /// through solve_smooth_restricted with this objective's subsolver config.
  virtual ParamVector restricted_minimize(const SupportSet& support, const ParamVector* warm = nullptr) const;

  const SubsolverConfig& subsolver_config() const { return subsolver_; }
  void set_subsolver_config(const SubsolverConfig& cfg) {
    cfg.validate();
    subsolver_ = cfg;
  }

 protected:
  void check_dimension(const Vector& theta) const;

 private:
  SubsolverConfig subsolver_;
};

/// log(1 + exp(t)) without overflow.
double softplus(double t);
/// 1 / (1 + exp(-t)) without overflow.
double sigmoid(double t);

}  // namespace scope
