#include "scope/objective.hpp"

#include "scope/subsolver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scope {

void SubsolverConfig::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SubsolverConfig: grad_tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SubsolverConfig: max_iter must be >= 1");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("SubsolverConfig: shrink must be in (0, 1)");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) {
    throw std::invalid_argument("SubsolverConfig: sufficient_decrease must be in (0, 1)");
  }
  if (ridge < 0.0 || max_ridge < 0.0) throw std::invalid_argument("SubsolverConfig: ridge must be >= 0");
}

double Objective::restricted_value(const SupportSet& support, const Vector& coef) const {
  return value(ParamVector::scatter(support, coef).values);
}

Vector Objective::restricted_gradient(const SupportSet& support, const Vector& coef) const {
  return gather(gradient(ParamVector::scatter(support, coef).values), support);
}

std::optional<Matrix> Objective::restricted_hessian(const SupportSet&, const Vector&) const { return std::nullopt; }

ParamVector Objective::restricted_minimize(const SupportSet& support, const ParamVector* warm) const {
  return solve_smooth_restricted(*this, support, subsolver_, warm);
}

void Objective::check_dimension(const Vector& theta) const {
  if (theta.size() != dimension()) {
    throw std::invalid_argument("objective: parameter has length " + std::to_string(theta.size()) +
                                ", expected " + std::to_string(dimension()));
  }
}

double softplus(double t) {
  // log(1 + e^t) = max(t, 0) + log1p(e^{-|t|})
  return (t > 0.0 ? t : 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace scope
