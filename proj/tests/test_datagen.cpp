#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scope/datagen.hpp"

#include <cmath>

using namespace scope;
using doctest::Approx;

TEST_CASE("AR(1) covariance entries") {
  const Matrix sigma = ar1_covariance(4, 0.6);
  CHECK(sigma(0, 2) == Approx(0.36));
  CHECK(sigma(1, 0) == Approx(0.6));
  CHECK(sigma(3, 3) == 1.0);
}

TEST_CASE("rho = 0 gives uncorrelated columns") {
  LinearGenConfig gc;
  gc.n = 10000;
  gc.p = 5;
  gc.s_true = 2;
  gc.rho = 0.0;
  gc.seed = 1;
  const auto inst = gen_linear(gc);
  const Matrix& x = inst.objective->design();
  const Matrix cov = x.transpose() * x / static_cast<double>(gc.n);
  for (Index i = 0; i < 5; ++i) {
    CHECK(cov(i, i) == Approx(1.0).epsilon(0.05));
    for (Index j = 0; j < 5; ++j) {
      if (i != j) CHECK(std::abs(cov(i, j)) < 0.1);
    }
  }
}

TEST_CASE("rho = 0.6 shows up in the sample covariance") {
  LinearGenConfig gc;
  gc.n = 20000;
  gc.p = 4;
  gc.s_true = 1;
  gc.seed = 5;
  const auto inst = gen_linear(gc);
  const Matrix& x = inst.objective->design();
  const Matrix cov = x.transpose() * x / static_cast<double>(gc.n);
  CHECK(cov(0, 1) == Approx(0.6).epsilon(0.05));
  CHECK(cov(0, 2) == Approx(0.36).epsilon(0.08));
}

TEST_CASE("generators are deterministic in the seed") {
  LinearGenConfig gc;
  gc.n = 50;
  gc.p = 12;
  gc.s_true = 3;
  gc.seed = 42;
  const auto a = gen_linear(gc), b = gen_linear(gc);
  CHECK(a.objective->design() == b.objective->design());
  CHECK(a.objective->response() == b.objective->response());
  CHECK(a.truth.theta_star.values == b.truth.theta_star.values);
  const auto la = gen_logistic(gc), lb = gen_logistic(gc);
  CHECK(la.objective->labels() == lb.objective->labels());
  // same seed, same design and truth for linear and logistic
  CHECK(la.objective->design() == a.objective->design());
  CHECK(la.truth.support == a.truth.support);
  gc.seed = 43;
  CHECK_FALSE(gen_linear(gc).objective->design() == a.objective->design());

  IsingGenConfig ic;
  ic.p = 6;
  ic.s_true = 5;
  ic.n = 200;
  ic.seed = 8;
  CHECK(gen_ising(ic).objective->data() == gen_ising(ic).objective->data());
}

TEST_CASE("ground truth consistency") {
  LinearGenConfig gc;
  gc.n = 30;
  gc.p = 40;
  gc.s_true = 7;
  gc.seed = 3;
  const auto inst = gen_linear(gc);
  const auto& t = inst.truth;
  CHECK(t.support.size() == 7);
  CHECK(t.vartheta == 100.0);
  for (Index j = 0; j < gc.p; ++j) {
    if (t.support.contains(j)) {
      CHECK(std::abs(t.theta_star.values[j]) == 100.0);
    } else {
      CHECK(t.theta_star.values[j] == 0.0);
    }
  }
}

TEST_CASE("noise level follows the per-sample and total SNR conventions") {
  LinearGenConfig gc;
  gc.n = 200;
  gc.p = 20;
  gc.s_true = 4;
  gc.snr = 6.0;
  gc.seed = 9;
  for (auto conv : {SnrConvention::per_sample, SnrConvention::total}) {
    gc.snr_convention = conv;
    const auto inst = gen_linear(gc);
    const double power = (inst.objective->design() * inst.truth.theta_star.values).squaredNorm();
    const double sigma2 = inst.truth.noise_sd * inst.truth.noise_sd;
    const double realized = conv == SnrConvention::per_sample ? power / (gc.n * sigma2) : power / sigma2;
    CHECK(std::abs(realized / gc.snr - 1.0) < 1e-12);
  }
  gc.snr = std::numeric_limits<double>::infinity();
  CHECK(gen_linear(gc).truth.noise_sd == 0.0);
}

TEST_CASE("response standardization and orthonormal designs") {
  LinearGenConfig gc;
  gc.n = 100;
  gc.p = 30;
  gc.s_true = 5;
  gc.seed = 12;
  const auto inst = gen_linear(gc);
  const Vector& y = inst.objective->response();
  CHECK(std::abs(y.mean()) < 1e-12);
  CHECK(y.squaredNorm() / gc.n == Approx(1.0));

  gc.orthonormal_design = true;
  gc.standardize_response = false;
  gc.snr = std::numeric_limits<double>::infinity();
  const auto ortho = gen_linear(gc);
  const Matrix& x = ortho.objective->design();
  CHECK((x.transpose() * x / 100.0 - Matrix::Identity(30, 30)).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((ortho.objective->response() - x * ortho.truth.theta_star.values).norm() == 0.0);

  gc.n = 20;
  CHECK_THROWS_AS(gen_linear(gc), std::invalid_argument);
}

TEST_CASE("logistic labels") {
  LinearGenConfig gc;
  gc.n = 10000;
  gc.p = 5;
  gc.s_true = 2;
  gc.signal_magnitude = 1e-12;  // effectively theta* = 0
  gc.seed = 4;
  const auto flat = gen_logistic(gc);
  const double mean = flat.objective->labels().mean();
  CHECK(std::abs(mean - 0.5) < 3.0 * 0.5 / std::sqrt(10000.0));

  gc.n = 500;
  gc.signal_magnitude = 1e6;  // saturated: labels follow the sign of x'theta*
  const auto sat = gen_logistic(gc);
  const Vector eta = sat.objective->design() * sat.truth.theta_star.values;
  for (Index i = 0; i < gc.n; ++i) {
    if (std::abs(eta[i]) > 50) CHECK(sat.objective->labels()[i] == (eta[i] > 0 ? 1.0 : 0.0));
  }
}

TEST_CASE("exact Ising probabilities") {
  const Vector uniform = ising_state_probabilities(Matrix::Zero(4, 4));
  CHECK(uniform.size() == 16);
  for (Index i = 0; i < 16; ++i) CHECK(uniform[i] == Approx(1.0 / 16));

  Matrix theta = Matrix::Zero(2, 2);
  theta(0, 1) = theta(1, 0) = 0.5;
  const Vector prob = ising_state_probabilities(theta);
  // states 0 (-,-) and 3 (+,+) agree
  const double agree = prob[0] + prob[3];
  CHECK(agree == Approx(std::exp(0.5) / (std::exp(0.5) + std::exp(-0.5))));
  CHECK(agree == Approx(0.7310585786));
}

TEST_CASE("Ising sampler matches exact configuration frequencies") {
  IsingGenConfig ic;
  ic.p = 6;
  ic.s_true = 6;
  ic.n = 100000;
  ic.seed = 17;
  const auto inst = gen_ising(ic);
  const Vector prob = ising_state_probabilities(ising_matrix(inst.truth.theta_star.values, ic.p));
  Vector freq = Vector::Zero(prob.size());
  const Matrix& x = inst.objective->data();
  for (Index i = 0; i < ic.n; ++i) {
    std::uint64_t st = 0;
    for (Index k = 0; k < ic.p; ++k) {
      if (x(i, k) > 0) st |= std::uint64_t{1} << k;
    }
    freq[static_cast<Index>(st)] += 1.0;
  }
  freq /= static_cast<double>(ic.n);
  const double tv = 0.5 * (freq - prob).cwiseAbs().sum();
  CHECK(tv < 0.02);
}

TEST_CASE("linked spins correlate more than unlinked ones") {
  IsingGenConfig ic;
  ic.p = 8;
  ic.s_true = 6;
  ic.n = 5000;
  ic.seed = 23;
  const auto inst = gen_ising(ic);
  const Matrix& x = inst.objective->data();
  const Matrix corr = x.transpose() * x / static_cast<double>(ic.n);
  double linked = 0.0, unlinked = 0.0;
  int nl = 0, nu = 0;
  for (Index j = 0; j < ising_dimension(ic.p); ++j) {
    const auto [k, l] = ising_pair(j, ic.p);
    if (inst.truth.support.contains(j)) {
      linked += std::abs(corr(k, l));
      ++nl;
    } else {
      unlinked += std::abs(corr(k, l));
      ++nu;
    }
  }
  CHECK(linked / nl > unlinked / nu);
  CHECK(inst.truth.vartheta == 0.5);
}

TEST_CASE("generator config validation") {
  IsingGenConfig ic;
  ic.p = 21;
  CHECK_THROWS_AS(gen_ising(ic), std::invalid_argument);
  ic.p = 4;
  ic.s_true = 7;
  CHECK_THROWS_AS(gen_ising(ic), std::invalid_argument);
  LinearGenConfig gc;
  gc.rho = 1.0;
  CHECK_THROWS_AS(gen_linear(gc), std::invalid_argument);
  gc.rho = 0.5;
  gc.snr = 0.0;
  CHECK_THROWS_AS(gen_linear(gc), std::invalid_argument);
}
