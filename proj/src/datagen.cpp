#include "scope/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace scope {

void LinearGenConfig::validate() const {
  if (n < 1 || p < 1) throw std::invalid_argument("LinearGenConfig: n and p must be positive");
  if (s_true < 1 || s_true > p) throw std::invalid_argument("LinearGenConfig: s_true must be in [1, p]");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("LinearGenConfig: rho must be in [0, 1)");
  if (!(snr > 0.0)) throw std::invalid_argument("LinearGenConfig: snr must be > 0");
  if (!(signal_magnitude > 0.0) || !std::isfinite(signal_magnitude)) {
    throw std::invalid_argument("LinearGenConfig: signal_magnitude must be positive and finite");
  }
  if (orthonormal_design && n < p) throw std::invalid_argument("LinearGenConfig: orthonormal design needs n >= p");
}

void IsingGenConfig::validate() const {
  if (p < 2) throw std::invalid_argument("IsingGenConfig: p must be >= 2");
  if (p > kMaxExactSpins) {
    throw std::invalid_argument("IsingGenConfig: p=" + std::to_string(p) + " exceeds the exact-sampler limit of " +
                                std::to_string(kMaxExactSpins));
  }
  if (s_true < 1 || s_true > ising_dimension(p)) throw std::invalid_argument("IsingGenConfig: s_true must be in [1, p(p-1)/2]");
  if (n < 1) throw std::invalid_argument("IsingGenConfig: n must be positive");
  if (!(coupling_magnitude > 0.0)) throw std::invalid_argument("IsingGenConfig: coupling_magnitude must be > 0");
}

Matrix ar1_covariance(Index p, double rho) {
  Matrix sigma(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
  }
  return sigma;
}

namespace {

using Rng = std::mt19937_64;

// Random support of size s in [0, dim) with equiprobable +-magnitude entries.
TruthSpec draw_truth(Index dim, Index s, double magnitude, std::uint64_t seed, Rng& rng) {
  std::vector<Index> all(static_cast<std::size_t>(dim));
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<Index> picked;
  std::sample(all.begin(), all.end(), std::back_inserter(picked), s, rng);
  TruthSpec truth;
  truth.p = dim;
  truth.s_true = s;
  truth.signal_magnitude = magnitude;
  truth.support = SupportSet::from_unsorted(std::move(picked), dim);
  std::bernoulli_distribution sign(0.5);
  Vector coef(s);
  for (Index i = 0; i < s; ++i) coef[i] = sign(rng) ? magnitude : -magnitude;
  truth.theta_star = ParamVector::scatter(truth.support, coef);
  truth.vartheta = magnitude;
  truth.seed = seed;
  return truth;
}

struct DesignDraw {
  Matrix x;
  TruthSpec truth;
};

DesignDraw draw_design(const LinearGenConfig& cfg, Rng& rng) {
  cfg.validate();
  const Matrix chol = Eigen::LLT<Matrix>(ar1_covariance(cfg.p, cfg.rho)).matrixL();
  std::normal_distribution<double> normal;
  Matrix z(cfg.n, cfg.p);
  for (Index i = 0; i < cfg.n; ++i) {
    for (Index j = 0; j < cfg.p; ++j) z(i, j) = normal(rng);
  }
  Matrix x = z * chol.transpose();
  if (cfg.orthonormal_design) {
    Eigen::HouseholderQR<Matrix> qr(x);
    const Matrix q = qr.householderQ() * Matrix::Identity(cfg.n, cfg.p);
    x = std::sqrt(static_cast<double>(cfg.n)) * q;
  }
  TruthSpec truth = draw_truth(cfg.p, cfg.s_true, cfg.signal_magnitude, cfg.seed, rng);
  return {std::move(x), std::move(truth)};
}

}  // namespace

ProblemInstance<QuadraticObjective> gen_linear(const LinearGenConfig& cfg) {
  Rng rng(cfg.seed);
  auto [x, truth] = draw_design(cfg, rng);
  const Vector signal = x * truth.theta_star.values;
  double sigma = 0.0;
  if (std::isfinite(cfg.snr)) {
    const double power = signal.squaredNorm();
    const double denom = cfg.snr_convention == SnrConvention::per_sample ? static_cast<double>(cfg.n) * cfg.snr : cfg.snr;
    sigma = std::sqrt(power / denom);
  }
  truth.noise_sd = sigma;
  std::normal_distribution<double> normal;
  Vector y = signal;
  for (Index i = 0; i < cfg.n; ++i) y[i] += sigma * normal(rng);
  if (cfg.standardize_response) {
    y.array() -= y.mean();
    const double sd = std::sqrt(y.squaredNorm() / static_cast<double>(cfg.n));
    if (sd > 0.0) y /= sd;
  }
  return {std::make_shared<const QuadraticObjective>(std::move(x), std::move(y)), std::move(truth)};
}

ProblemInstance<LogisticObjective> gen_logistic(const LinearGenConfig& cfg) {
  Rng rng(cfg.seed);
  auto [x, truth] = draw_design(cfg, rng);
  const Vector eta = x * truth.theta_star.values;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector y(cfg.n);
  for (Index i = 0; i < cfg.n; ++i) y[i] = unif(rng) < sigmoid(eta[i]) ? 1.0 : 0.0;
  return {std::make_shared<const LogisticObjective>(std::move(x), std::move(y)), std::move(truth)};
}

Vector ising_state_spins(std::uint64_t state, Index p) {
  Vector x(p);
  for (Index k = 0; k < p; ++k) x[k] = ((state >> k) & 1u) ? 1.0 : -1.0;
  return x;
}

Vector ising_state_probabilities(const Matrix& interactions) {
  const Index p = interactions.rows();
  if (p > IsingGenConfig::kMaxExactSpins) throw std::invalid_argument("ising_state_probabilities: p too large");
  const std::uint64_t states = std::uint64_t{1} << p;
  Vector logmass(static_cast<Index>(states));
  for (std::uint64_t st = 0; st < states; ++st) {
    const Vector x = ising_state_spins(st, p);
    // (1/2) sum_{k,l} theta_kl x_k x_l = sum_{k<l} theta_kl x_k x_l
    double e = 0.0;
    for (Index k = 0; k < p; ++k) {
      for (Index l = k + 1; l < p; ++l) e += interactions(k, l) * x[k] * x[l];
    }
    logmass[static_cast<Index>(st)] = e;
  }
  const double top = logmass.maxCoeff();
  Vector prob = (logmass.array() - top).exp();
  return prob / prob.sum();
}

ProblemInstance<IsingObjective> gen_ising(const IsingGenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TruthSpec truth = draw_truth(ising_dimension(cfg.p), cfg.s_true, cfg.coupling_magnitude, cfg.seed, rng);
  const Vector prob = ising_state_probabilities(ising_matrix(truth.theta_star.values, cfg.p));
  std::discrete_distribution<std::uint64_t> pick(prob.data(), prob.data() + prob.size());
  Matrix samples(cfg.n, cfg.p);
  for (Index i = 0; i < cfg.n; ++i) samples.row(i) = ising_state_spins(pick(rng), cfg.p).transpose();
  return {std::make_shared<const IsingObjective>(std::move(samples)), std::move(truth)};
}

}  // namespace scope
