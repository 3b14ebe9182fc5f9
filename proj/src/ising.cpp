#include "scope/ising.hpp"

#include <stdexcept>
#include <string>

namespace scope {

Index ising_dimension(Index p) { return p * (p - 1) / 2; }

Index ising_pair_index(Index k, Index l, Index p) {
  if (!(0 <= k && k < l && l < p)) {
    throw std::invalid_argument("ising_pair_index: need 0 <= k < l < p, got (" + std::to_string(k) + ", " +
                                std::to_string(l) + ") with p=" + std::to_string(p));
  }
  return k * p - k * (k + 1) / 2 + (l - k - 1);
}

std::pair<Index, Index> ising_pair(Index flat, Index p) {
  if (flat < 0 || flat >= ising_dimension(p)) throw std::invalid_argument("ising_pair: index out of range");
  Index k = 0;
  Index row_len = p - 1;
  while (flat >= row_len) {
    flat -= row_len;
    ++k;
    --row_len;
  }
  return {k, k + 1 + flat};
}

Matrix ising_matrix(const Vector& flat, Index p) {
  if (flat.size() != ising_dimension(p)) throw std::invalid_argument("ising_matrix: wrong parameter length");
  Matrix m = Matrix::Zero(p, p);
  Index idx = 0;
  for (Index k = 0; k < p; ++k) {
    for (Index l = k + 1; l < p; ++l, ++idx) {
      m(k, l) = flat[idx];
      m(l, k) = flat[idx];
    }
  }
  return m;
}

Vector ising_flatten(const Matrix& m) {
  const Index p = m.rows();
  Vector flat(ising_dimension(p));
  Index idx = 0;
  for (Index k = 0; k < p; ++k) {
    for (Index l = k + 1; l < p; ++l) flat[idx++] = m(k, l);
  }
  return flat;
}

IsingObjective::IsingObjective(Matrix samples) : x_(std::move(samples)), p_(x_.cols()) {
  if (x_.rows() == 0 || p_ < 2) throw std::invalid_argument("IsingObjective: need n >= 1 samples of p >= 2 spins");
  for (Index i = 0; i < x_.rows(); ++i) {
    for (Index k = 0; k < p_; ++k) {
      const double v = x_(i, k);
      if (v != 1.0 && v != -1.0) {
        throw std::invalid_argument("IsingObjective: sample entry (" + std::to_string(i) + ", " +
                                    std::to_string(k) + ") = " + std::to_string(v) + " is not +-1");
      }
    }
  }
}

Matrix IsingObjective::local_fields(const SupportSet& support, const Vector& coef) const {
  if (coef.size() != support.size() || support.dim() != dimension()) {
    throw std::invalid_argument("IsingObjective: support/coefficient mismatch");
  }
  Matrix fields = Matrix::Zero(x_.rows(), p_);
  for (Index a = 0; a < support.size(); ++a) {
    const auto [k, l] = ising_pair(support[a], p_);
    fields.col(k).noalias() += coef[a] * x_.col(l);
    fields.col(l).noalias() += coef[a] * x_.col(k);
  }
  return fields;
}

namespace {

double pseudo_loss(const Matrix& x, const Matrix& fields) {
  double total = 0.0;
  for (Index k = 0; k < x.cols(); ++k) {
    for (Index i = 0; i < x.rows(); ++i) total += softplus(-2.0 * x(i, k) * fields(i, k));
  }
  return total / static_cast<double>(x.rows());
}

}  // namespace

double IsingObjective::value(const Vector& theta) const {
  check_dimension(theta);
  return pseudo_loss(x_, x_ * ising_matrix(theta, p_));
}

double IsingObjective::restricted_value(const SupportSet& support, const Vector& coef) const {
  return pseudo_loss(x_, local_fields(support, coef));
}

Vector IsingObjective::gradient(const Vector& theta) const {
  check_dimension(theta);
  const Matrix fields = x_ * ising_matrix(theta, p_);
  // r_ik = x_ik (1 - phi_k(x_i))
  Matrix r(x_.rows(), p_);
  for (Index k = 0; k < p_; ++k) {
    for (Index i = 0; i < x_.rows(); ++i) r(i, k) = x_(i, k) * sigmoid(-2.0 * x_(i, k) * fields(i, k));
  }
  const Matrix cross = r.transpose() * x_;
  Matrix g = cross + cross.transpose();
  g *= -2.0 / static_cast<double>(x_.rows());
  return ising_flatten(g);
}

std::optional<Matrix> IsingObjective::restricted_hessian(const SupportSet& support, const Vector& coef) const {
  const Matrix fields = local_fields(support, coef);
  const Index n = x_.rows();
  // curvature of each conditional: phi (1 - phi)
  Matrix w(n, p_);
  for (Index k = 0; k < p_; ++k) {
    for (Index i = 0; i < n; ++i) {
      const double phi = sigmoid(2.0 * x_(i, k) * fields(i, k));
      w(i, k) = phi * (1.0 - phi);
    }
  }
  const Index s = support.size();
  Matrix h = Matrix::Zero(s, s);
  for (Index a = 0; a < s; ++a) {
    const auto [k, l] = ising_pair(support[a], p_);
    h(a, a) = w.col(k).sum() + w.col(l).sum();
    for (Index b = a + 1; b < s; ++b) {
      const auto [v, t] = ising_pair(support[b], p_);
      Index shared = -1, u = -1, z = -1;
      if (k == v) {
        shared = k, u = l, z = t;
      } else if (k == t) {
        shared = k, u = l, z = v;
      } else if (l == v) {
        shared = l, u = k, z = t;
      } else if (l == t) {
        shared = l, u = k, z = v;
      }
      if (shared < 0) continue;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) acc += x_(i, u) * x_(i, z) * w(i, shared);
      h(a, b) = acc;
      h(b, a) = acc;
    }
  }
  return h * (4.0 / static_cast<double>(n));
}

}  // namespace scope
