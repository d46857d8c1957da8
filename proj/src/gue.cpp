#include "gw/gue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gw/distributions.hpp"

namespace gw {

HermiteTridiagonal::HermiteTridiagonal(Eigen::VectorXd diag, Eigen::VectorXd offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.size() < 1 || offdiag_.size() != diag_.size() - 1) {
    throw std::invalid_argument("HermiteTridiagonal: need m diagonal and m-1 off-diagonal entries");
  }
  if ((offdiag_.array() < 0.0).any()) {
    throw std::invalid_argument("HermiteTridiagonal: off-diagonal entries must be nonnegative");
  }
}

Eigen::MatrixXd HermiteTridiagonal::dense() const {
  const Eigen::Index m = size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  out.diagonal() = diag_;
  if (m > 1) {
    out.diagonal(1) = offdiag_;
    out.diagonal(-1) = offdiag_;
  }
  return out;
}

HermiteTridiagonal sample_tridiagonal(Eigen::Index m, RandomStream& stream) {
  if (m < 1) throw std::invalid_argument("sample_tridiagonal: m must be positive");
  Eigen::VectorXd diag(m);
  for (Eigen::Index k = 0; k < m; ++k) diag(k) = stream.standard_normal();
  Eigen::VectorXd offdiag(m - 1);
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    offdiag(j) = std::sqrt(sample_gamma(static_cast<double>(m - 1 - j), stream));
  }
  return HermiteTridiagonal(std::move(diag), std::move(offdiag));
}

Eigen::Index sturm_count(const HermiteTridiagonal& t, double shift) {
  const auto& d = t.diag();
  const auto& e = t.offdiag();
  const double pivmin =
      std::numeric_limits<double>::min() *
      std::max(1.0, e.size() > 0 ? e.array().square().maxCoeff() : 1.0);
  Eigen::Index count = 0;
  double q = d(0) - shift;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (Eigen::Index k = 1; k < d.size(); ++k) {
    q = (d(k) - shift) - e(k - 1) * e(k - 1) / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_interval(const HermiteTridiagonal& t) {
  const auto& d = t.diag();
  const auto& e = t.offdiag();
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    double radius = 0.0;
    if (k > 0) radius += std::abs(e(k - 1));
    if (k + 1 < d.size()) radius += std::abs(e(k));
    lower = std::min(lower, d(k) - radius);
    upper = std::max(upper, d(k) + radius);
  }
  return {lower, upper};
}

double kth_eigenvalue(const HermiteTridiagonal& t, Eigen::Index k, double tolerance) {
  if (k < 0 || k >= t.size()) throw std::out_of_range("kth_eigenvalue: index out of range");
  auto [lo, hi] = gershgorin_interval(t);
  // Widen slightly so the endpoints strictly bracket the spectrum.
  const double pad = tolerance + 1e-12 * std::max(std::abs(lo), std::abs(hi));
  lo -= pad;
  hi += pad;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenSample eigenvalues(const HermiteTridiagonal& t) {
  EigenSample sample;
  sample.eigenvalues.resize(t.size());
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    sample.eigenvalues(k) = kth_eigenvalue(t, k);
  }
  sample.lambda_max = sample.eigenvalues(t.size() - 1);
  return sample;
}

Eigen::VectorXd sample_lambda_max(Eigen::Index m, Eigen::Index count,
                                  RandomStream& stream) {
  if (m < 1 || count < 1) {
    throw std::invalid_argument("sample_lambda_max: m and count must be positive");
  }
  Eigen::VectorXd out(count);
  for (Eigen::Index r = 0; r < count; ++r) {
    out(r) = largest_eigenvalue(sample_tridiagonal(m, stream));
  }
  return out;
}

}  // namespace gw
