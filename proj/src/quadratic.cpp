#include "scope/quadratic.hpp"

#include "scope/subsolver.hpp"

#include <stdexcept>

namespace scope {

QuadraticObjective::QuadraticObjective(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) throw std::invalid_argument("QuadraticObjective: X rows != length of y");
  if (x_.rows() == 0 || x_.cols() == 0) throw std::invalid_argument("QuadraticObjective: empty design");
}

double QuadraticObjective::value(const Vector& theta) const {
  check_dimension(theta);
  return (y_ - x_ * theta).squaredNorm() / (2.0 * static_cast<double>(samples()));
}

Vector QuadraticObjective::gradient(const Vector& theta) const {
  check_dimension(theta);
  return -(x_.transpose() * (y_ - x_ * theta)) / static_cast<double>(samples());
}

Vector QuadraticObjective::residual(const SupportSet& support, const Vector& coef) const {
  if (coef.size() != support.size() || support.dim() != dimension()) {
    throw std::invalid_argument("QuadraticObjective: support/coefficient mismatch");
  }
  Vector r = y_;
  for (Index i = 0; i < support.size(); ++i) r.noalias() -= coef[i] * x_.col(support[i]);
  return r;
}

double QuadraticObjective::restricted_value(const SupportSet& support, const Vector& coef) const {
  return residual(support, coef).squaredNorm() / (2.0 * static_cast<double>(samples()));
}

Vector QuadraticObjective::restricted_gradient(const SupportSet& support, const Vector& coef) const {
  const Vector r = residual(support, coef);
  Vector g(support.size());
  for (Index i = 0; i < support.size(); ++i) g[i] = -x_.col(support[i]).dot(r);
  return g / static_cast<double>(samples());
}

std::optional<Matrix> QuadraticObjective::restricted_hessian(const SupportSet& support, const Vector&) const {
  return gram_block(support);
}

Matrix QuadraticObjective::gram_block(const SupportSet& support) const {
  const Index s = support.size();
  Matrix g(s, s);
  for (Index a = 0; a < s; ++a) {
    for (Index b = a; b < s; ++b) {
      g(a, b) = x_.col(support[a]).dot(x_.col(support[b]));
      g(b, a) = g(a, b);
    }
  }
  return g / static_cast<double>(samples());
}

Vector QuadraticObjective::xty_block(const SupportSet& support) const {
  Vector v(support.size());
  for (Index i = 0; i < support.size(); ++i) v[i] = x_.col(support[i]).dot(y_);
  return v / static_cast<double>(samples());
}

ParamVector QuadraticObjective::restricted_minimize(const SupportSet& support, const ParamVector*) const {
  return solve_quadratic_restricted(*this, support, subsolver_config());
}

}  // namespace scope
