#include "scope/logistic.hpp"

#include <stdexcept>

namespace scope {

LogisticObjective::LogisticObjective(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) throw std::invalid_argument("LogisticObjective: X rows != number of labels");
  if (x_.rows() == 0 || x_.cols() == 0) throw std::invalid_argument("LogisticObjective: empty design");
  for (Index i = 0; i < y_.size(); ++i) {
    if (y_[i] != 0.0 && y_[i] != 1.0) {
      throw std::invalid_argument("LogisticObjective: label " + std::to_string(y_[i]) + " at row " +
                                  std::to_string(i) + " is not in {0, 1}");
    }
  }
}

double LogisticObjective::loss(const Vector& eta) const {
  double total = 0.0;
  // softplus(eta) - y eta, written per label to keep precision when |eta| is large
  for (Index i = 0; i < eta.size(); ++i) total += y_[i] == 1.0 ? softplus(-eta[i]) : softplus(eta[i]);
  return total / static_cast<double>(samples());
}

double LogisticObjective::value(const Vector& theta) const {
  check_dimension(theta);
  return loss(x_ * theta);
}

Vector LogisticObjective::gradient(const Vector& theta) const {
  check_dimension(theta);
  const Vector eta = x_ * theta;
  Vector resid(eta.size());
  for (Index i = 0; i < eta.size(); ++i) resid[i] = y_[i] == 1.0 ? -sigmoid(-eta[i]) : sigmoid(eta[i]);
  return x_.transpose() * resid / static_cast<double>(samples());
}

Vector LogisticObjective::linear_predictor(const SupportSet& support, const Vector& coef) const {
  if (coef.size() != support.size() || support.dim() != dimension()) {
    throw std::invalid_argument("LogisticObjective: support/coefficient mismatch");
  }
  Vector eta = Vector::Zero(samples());
  for (Index i = 0; i < support.size(); ++i) eta.noalias() += coef[i] * x_.col(support[i]);
  return eta;
}

double LogisticObjective::restricted_value(const SupportSet& support, const Vector& coef) const {
  return loss(linear_predictor(support, coef));
}

Vector LogisticObjective::restricted_gradient(const SupportSet& support, const Vector& coef) const {
  const Vector eta = linear_predictor(support, coef);
  Vector resid(eta.size());
  for (Index i = 0; i < eta.size(); ++i) resid[i] = y_[i] == 1.0 ? -sigmoid(-eta[i]) : sigmoid(eta[i]);
  Vector g(support.size());
  for (Index a = 0; a < support.size(); ++a) g[a] = x_.col(support[a]).dot(resid);
  return g / static_cast<double>(samples());
}

std::optional<Matrix> LogisticObjective::restricted_hessian(const SupportSet& support, const Vector& coef) const {
  const Vector eta = linear_predictor(support, coef);
  Vector w(eta.size());
  for (Index i = 0; i < eta.size(); ++i) {
    const double mu = sigmoid(eta[i]);
    w[i] = mu * (1.0 - mu);
  }
  const Index s = support.size();
  Matrix h(s, s);
  for (Index a = 0; a < s; ++a) {
    const Vector wa = w.cwiseProduct(x_.col(support[a]));
    for (Index b = a; b < s; ++b) {
      h(a, b) = wa.dot(x_.col(support[b]));
      h(b, a) = h(a, b);
    }
  }
  return h / static_cast<double>(samples());
}

}  // namespace scope
