#pragma once

#include <Eigen/Dense>

#include "gw/rng.hpp"

namespace gw {

/// Beta(a, b) parameters; both strictly positive.
class BetaSpec {
 public:
  BetaSpec(double a, double b);
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

/// Dirichlet concentration parameters; all strictly positive.
class DirichletSpec {
 public:
  explicit DirichletSpec(Eigen::VectorXd alphas);
  static DirichletSpec symmetric(Eigen::Index components, double alpha);

  const Eigen::VectorXd& alphas() const { return alphas_; }
  Eigen::Index size() const { return alphas_.size(); }

 private:
  Eigen::VectorXd alphas_;
};

/// Joint density of the ordered maximizers (theta_1, ..., theta_{m-1}), with
/// m = theta.size() + 1:
///   Gamma(m/2) pi^{-m/2} theta_1^{-1/2} (1 - theta_{m-1})^{-1/2}
///     prod_{i=2}^{m-1} (theta_i - theta_{i-1})^{-1/2}.
/// Throws std::invalid_argument unless 0 < theta_1 < ... < theta_{m-1} < 1.
double f_m_density(const Eigen::Ref<const Eigen::VectorXd>& theta);

/// Throws std::invalid_argument unless 0 < x < 1.
double beta_density(const BetaSpec& spec, double x);

/// Regularized incomplete beta I_x(a, b); x in [0, 1].
double beta_cdf(const BetaSpec& spec, double x);

/// Gamma(shape, 1). Shape >= 1 uses Marsaglia-Tsang; shape < 1 boosts
/// through Gamma(shape + 1) * U^{1/shape}.
double sample_gamma(double shape, RandomStream& stream);

/// (G_1/S, ..., G_K/S) with G_k ~ Gamma(alpha_k).
Eigen::VectorXd sample_dirichlet(const DirichletSpec& spec, RandomStream& stream);

/// Partial sums of the first K-1 gaps: the interior partition points.
Eigen::VectorXd gaps_to_theta(const Eigen::Ref<const Eigen::VectorXd>& gaps);

}  // namespace gw
