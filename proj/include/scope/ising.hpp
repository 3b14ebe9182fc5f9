#pragma once

#include "scope/objective.hpp"

#include <utility>

namespace scope {

/// Number of free parameters of a p-variable Ising model: p(p-1)/2.
Index ising_dimension(Index p);
/// Flat index of pair (k, l), k < l, in the row-major upper triangle.
Index ising_pair_index(Index k, Index l, Index p);
/// Inverse of ising_pair_index.
std::pair<Index, Index> ising_pair(Index flat, Index p);
/// Symmetric zero-diagonal p x p matrix from the flattened upper triangle.
Matrix ising_matrix(const Vector& flat, Index p);
/// Flattened upper triangle of a p x p matrix.
Vector ising_flatten(const Matrix& m);

/// Negative mean log pseudo-likelihood of a zero-field Ising model on {-1,+1}^p.
///
/// The parameter is the flattened upper triangle of the symmetric
/// interaction matrix, so supports and sparsity live in dimension p(p-1)/2.
/// With m_ik = sum_{l != k} theta_kl x_il and phi_k = sigmoid(2 x_ik m_ik):
///   f          = (1/n) sum_i sum_k softplus(-2 x_ik m_ik)
///   df/dtheta_kl = -(2/n) sum_i x_ik x_il (2 - phi_k - phi_l)
class IsingObjective final : public Objective {
 public:
  /// Throws std::invalid_argument unless every sample entry is -1 or +1.
  explicit IsingObjective(Matrix samples);

  Index dimension() const override { return ising_dimension(p_); }
  Index variables() const { return p_; }
  Index samples() const { return x_.rows(); }
  const Matrix& data() const { return x_; }

  double value(const Vector& theta) const override;
  Vector gradient(const Vector& theta) const override;
  double restricted_value(const SupportSet& support, const Vector& coef) const override;
  std::optional<Matrix> restricted_hessian(const SupportSet& support, const Vector& coef) const override;

 private:
  // n x p matrix of local fields m_ik.
  Matrix local_fields(const SupportSet& support, const Vector& coef) const;

  Matrix x_;
  Index p_;
};

}  // namespace scope
