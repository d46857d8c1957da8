#pragma once

#include <Eigen/Dense>

#include "gw/rng.hpp"

namespace gw {

/// Symmetric tridiagonal matrix of the beta = 2 Hermite model. Its
/// eigenvalues have joint density proportional to
/// prod |l_i - l_j|^2 exp(-sum l_k^2 / 2), so the 1x1 case is N(0, 1).
class HermiteTridiagonal {
 public:
  HermiteTridiagonal(Eigen::VectorXd diag, Eigen::VectorXd offdiag);

  Eigen::Index size() const { return diag_.size(); }
  const Eigen::VectorXd& diag() const { return diag_; }
  const Eigen::VectorXd& offdiag() const { return offdiag_; }

  /// Dense copy, for debugging and cross-checks.
  Eigen::MatrixXd dense() const;

 private:
  Eigen::VectorXd diag_;
  Eigen::VectorXd offdiag_;
};

struct EigenSample {
  Eigen::VectorXd eigenvalues;  // ascending
  double lambda_max = 0.0;
};

inline constexpr double kBisectionTolerance = 1e-10;

/// diag ~ N(0,1); offdiag[j] = sqrt(Gamma(m-1-j, 1)) ~ chi_{2(m-1-j)} / sqrt(2).
HermiteTridiagonal sample_tridiagonal(Eigen::Index m, RandomStream& stream);

/// Number of eigenvalues strictly below `shift` (Sturm sequence sign count).
Eigen::Index sturm_count(const HermiteTridiagonal& t, double shift);

/// Gershgorin enclosure [lower, upper] of the spectrum.
std::pair<double, double> gershgorin_interval(const HermiteTridiagonal& t);

/// The k-th smallest eigenvalue (0-based) by bisection.
double kth_eigenvalue(const HermiteTridiagonal& t, Eigen::Index k,
                      double tolerance = kBisectionTolerance);

EigenSample eigenvalues(const HermiteTridiagonal& t);

inline double largest_eigenvalue(const HermiteTridiagonal& t) {
  return kth_eigenvalue(t, t.size() - 1);
}

/// `count` i.i.d. draws of the largest GUE eigenvalue, all from `stream`.
Eigen::VectorXd sample_lambda_max(Eigen::Index m, Eigen::Index count,
                                  RandomStream& stream);

}  // namespace gw
