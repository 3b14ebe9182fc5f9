#pragma once

#include "scope/ising.hpp"
#include "scope/logistic.hpp"
#include "scope/quadratic.hpp"

#include <cstdint>
#include <limits>
#include <memory>

namespace scope {

/// Ground truth of a synthetic instance.
struct TruthSpec {
  Index p = 0;
  Index s_true = 0;
  double signal_magnitude = 0.0;  // every nonzero of theta_star is +-signal_magnitude
  SupportSet support;
  ParamVector theta_star;
  double vartheta = 0.0;  // min |theta_star_j| over the support
  double noise_sd = 0.0;  // linear model only, before response standardization
  std::uint64_t seed = 0;
};

enum class SnrConvention {
  per_sample,  // sigma^2 = ||X theta*||^2 / (n * snr)
  total,       // sigma^2 = ||X theta*||^2 / snr
};

struct LinearGenConfig {
  Index n = 100;
  Index p = 20;
  Index s_true = 3;
  double rho = 0.6;  // AR(1) correlation of the design columns
  double snr = 1.0;  // +inf gives noiseless responses
  SnrConvention snr_convention = SnrConvention::per_sample;
  double signal_magnitude = 100.0;
  std::uint64_t seed = 0;
  bool standardize_response = true;
  // Replace X by sqrt(n) * Q from a thin QR, so that X'X = n I (needs n >= p).
  bool orthonormal_design = false;

  void validate() const;
};

struct IsingGenConfig {
  Index p = 10;
  Index s_true = 8;  // number of edges
  double coupling_magnitude = 0.5;
  Index n = 1000;
  std::uint64_t seed = 0;

  static constexpr Index kMaxExactSpins = 20;
  void validate() const;
};

template <class Obj>
struct ProblemInstance {
  std::shared_ptr<const Obj> objective;
  TruthSpec truth;
};

/// Sigma_ij = rho^|i-j|.
Matrix ar1_covariance(Index p, double rho);

/// Rows of X i.i.d. N(0, Sigma) with Sigma the AR(1) covariance; random
/// s-sparse theta* with entries +-signal_magnitude; Gaussian noise from snr.
ProblemInstance<QuadraticObjective> gen_linear(const LinearGenConfig& cfg);

/// Same X and theta* as gen_linear (noise and standardization ignored);
/// y_i ~ Bernoulli(sigmoid(x_i' theta*)).
ProblemInstance<LogisticObjective> gen_logistic(const LinearGenConfig& cfg);

/// Random s-edge interaction matrix with +-coupling_magnitude weights and n
/// exact samples drawn by enumerating all 2^p spin configurations.
ProblemInstance<IsingObjective> gen_ising(const IsingGenConfig& cfg);

/// Exact distribution of the zero-field Ising model: probability of every
/// configuration, indexed by the bit pattern (bit k set <=> x_k = +1).
Vector ising_state_probabilities(const Matrix& interactions);

/// Spin configuration encoded by `state` (see ising_state_probabilities).
Vector ising_state_spins(std::uint64_t state, Index p);

}  // namespace scope
