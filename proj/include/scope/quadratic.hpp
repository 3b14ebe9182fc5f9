#pragma once

#include "scope/objective.hpp"

namespace scope {

/// f(theta) = ||y - X theta||^2 / (2n).
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Matrix x, Vector y);

  Index dimension() const override { return x_.cols(); }
  Index samples() const { return x_.rows(); }
  const Matrix& design() const { return x_; }
  const Vector& response() const { return y_; }

  double value(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  double restricted_value(const SupportSet& support, const Vector& coef) const override;
  Vector restricted_gradient(const SupportSet& support, const Vector& coef) const override;
  std::optional<Matrix> restricted_hessian(const SupportSet& support, const Vector& coef) const override;

  /// Closed-form normal-equations solve; `warm` is ignored.
  ParamVector restricted_minimize(const SupportSet& support, const ParamVector* warm = nullptr) const override;

  /// X_A' X_A / n.
  Matrix gram_block(const SupportSet& support) const;
  /// X_A' y / n.
  Vector xty_block(const SupportSet& support) const;

 private:
  Vector residual(const SupportSet& support, const Vector& coef) const;

  Matrix x_;
  Vector y_;
};

}  // namespace scope
