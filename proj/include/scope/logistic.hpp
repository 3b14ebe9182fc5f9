#pragma once

#include "scope/objective.hpp"

namespace scope {

/// Negative mean log-likelihood of logistic regression without intercept:
/// f(theta) = (1/n) sum_i [ softplus(x_i'theta) - y_i x_i'theta ],  y_i in {0, 1}.
class LogisticObjective final : public Objective {
 public:
  /// Throws std::invalid_argument when a label is not 0 or 1.
  LogisticObjective(Matrix x, Vector y);

  Index dimension() const override { return x_.cols(); }
  Index samples() const { return x_.rows(); }
  const Matrix& design() const { return x_; }
  const Vector& labels() const { return y_; }

  double value(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  double restricted_value(const SupportSet& support, const Vector& coef) const override;
  Vector restricted_gradient(const SupportSet& support, const Vector& coef) const override;
  std::optional<Matrix> restricted_hessian(const SupportSet& support, const Vector& coef) const override;

 private:
  Vector linear_predictor(const SupportSet& support, const Vector& coef) const;
  double loss(const Vector& eta) const;

  Matrix x_;
  Vector y_;
};

}  // namespace scope
