#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "gw/brownian.hpp"
#include "gw/gue.hpp"
#include "gw/maximizer.hpp"
#include "gw/special.hpp"
#include "gw/stats.hpp"

using gw::HermiteTridiagonal;
using gw::RandomStream;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("tridiagonal shape validation") {
  CHECK_THROWS_AS(HermiteTridiagonal(vec({1.0, 2.0}), vec({})), std::invalid_argument);
  CHECK_THROWS_AS(HermiteTridiagonal(vec({1.0, 2.0}), vec({-0.5})), std::invalid_argument);
  CHECK_THROWS_AS(HermiteTridiagonal(Eigen::VectorXd(), Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("1x1 and 2x2 analytic spectra") {
  const auto one = gw::eigenvalues(HermiteTridiagonal(vec({0.7}), Eigen::VectorXd()));
  CHECK(one.eigenvalues.size() == 1);
  CHECK(std::abs(one.lambda_max - 0.7) < 1e-10);

  const auto two = gw::eigenvalues(HermiteTridiagonal(vec({0.0, 0.0}), vec({1.0})));
  CHECK(std::abs(two.eigenvalues(0) + 1.0) < 1e-10);
  CHECK(std::abs(two.eigenvalues(1) - 1.0) < 1e-10);
}

TEST_CASE("2x2 bisection matches the quadratic formula") {
  RandomStream stream({51, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 3.0 * stream.standard_normal();
    const double b = std::abs(2.0 * stream.standard_normal());
    const double c = 3.0 * stream.standard_normal();
    const auto sample = gw::eigenvalues(HermiteTridiagonal(vec({a, c}), vec({b})));
    const double root = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
    REQUIRE(std::abs(sample.eigenvalues(0) - 0.5 * (a + c - root)) < 1e-10);
    REQUIRE(std::abs(sample.eigenvalues(1) - 0.5 * (a + c + root)) < 1e-10);
  }
}

TEST_CASE("bisection agrees with a dense self-adjoint solver") {
  RandomStream stream({52, 0});
  for (Eigen::Index m = 1; m <= 12; ++m) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto t = gw::sample_tridiagonal(m, stream);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t.dense(), Eigen::EigenvaluesOnly);
      const auto sample = gw::eigenvalues(t);
      REQUIRE((sample.eigenvalues - solver.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
      REQUIRE(std::is_sorted(sample.eigenvalues.begin(), sample.eigenvalues.end()));
      REQUIRE(sample.lambda_max == sample.eigenvalues.maxCoeff());
      REQUIRE(std::abs(gw::largest_eigenvalue(t) - sample.lambda_max) < 1e-10);
    }
  }
}

TEST_CASE("Sturm count equals the number of eigenvalues below a shift") {
  RandomStream stream({53, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = gw::sample_tridiagonal(8, stream);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t.dense(), Eigen::EigenvaluesOnly);
    const auto [lo, hi] = gw::gershgorin_interval(t);
    CHECK(gw::sturm_count(t, lo - 1e-9) == 0);
    CHECK(gw::sturm_count(t, hi + 1e-9) == 8);
    for (int s = 0; s < 20; ++s) {
      const double shift = lo + (hi - lo) * stream.uniform();
      const auto below = (solver.eigenvalues().array() < shift).count();
      REQUIRE(gw::sturm_count(t, shift) == below);
    }
  }
}

TEST_CASE("sampled tridiagonals have the beta = 2 entry laws") {
  RandomStream stream({54, 0});
  Eigen::VectorXd offdiag(10000);
  Eigen::VectorXd diag(10000);
  for (Eigen::Index r = 0; r < offdiag.size(); ++r) {
    const auto t = gw::sample_tridiagonal(2, stream);
    CHECK(t.offdiag()(0) >= 0.0);
    offdiag(r) = t.offdiag()(0);
    diag(r) = t.diag()(1);
  }
  CHECK(gw::ks_one_sample(offdiag, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x); }, 0.01).passed);
  CHECK(gw::ks_one_sample(diag, gw::special::normal_cdf, 0.01).passed);

  // Position k from the top is chi_{2(m-k)} / sqrt 2: E[x^2] = m - k.
  Eigen::MatrixXd squares(20000, 4);
  for (Eigen::Index r = 0; r < squares.rows(); ++r) {
    squares.row(r) = gw::sample_tridiagonal(5, stream).offdiag().array().square().transpose();
  }
  for (Eigen::Index k = 0; k < 4; ++k) {
    CHECK(gw::moment_z_test(squares.col(k), static_cast<double>(4 - k), gw::alpha_for_sigmas(3.0)).passed);
  }
}

TEST_CASE("1x1 largest eigenvalue is standard normal") {
  RandomStream stream({55, 0});
  const auto draws = gw::sample_lambda_max(1, 100000, stream);
  CHECK(gw::ks_one_sample(draws, gw::special::normal_cdf, 0.01).passed);
}

TEST_CASE("trace of the 5x5 model has mean zero") {
  RandomStream stream({56, 0});
  Eigen::VectorXd traces(100000);
  for (auto& t : traces) {
    const auto sample = gw::eigenvalues(gw::sample_tridiagonal(5, stream));
    t = sample.eigenvalues.sum();
  }
  CHECK(gw::moment_z_test(traces, 0.0, gw::alpha_for_sigmas(3.0)).passed);
}

TEST_CASE("2x2 largest eigenvalue mean matches Monte Carlo D_2") {
  RandomStream gue_stream({57, 0});
  const auto lambdas = gw::sample_lambda_max(2, 100000, gue_stream);
  // E lambda_max = E D_2 = 2 / sqrt(pi).
  CHECK(gw::moment_z_test(lambdas, 2.0 / std::sqrt(M_PI), gw::alpha_for_sigmas(3.0)).passed);

  constexpr int replicas = 10000;
  Eigen::VectorXd d_values(replicas);
  for (int r = 0; r < replicas; ++r) {
    RandomStream path_stream({58, static_cast<std::uint64_t>(r)});
    d_values(r) = gw::maximize(gw::simulate<double>(2, 8192, path_stream)).value;
  }
  const double se = std::sqrt((lambdas.array() - lambdas.mean()).square().sum() / (lambdas.size() - 1.0) / lambdas.size() +
                              (d_values.array() - d_values.mean()).square().sum() / (replicas - 1.0) / replicas);
  CHECK(std::abs(lambdas.mean() - d_values.mean()) < 3.0 * se);
}
