#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <utility>

#include "gw/rng.hpp"

namespace gw {

using Eigen::Index;

/// m independent standard Brownian paths sampled on the uniform grid
/// k/n, k = 0..n. Row i holds B^{i+1}; column k holds time k/n.
template <typename Scalar = double>
class BrownianGrid {
 public:
  using Matrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  /// Takes ownership of an m x (n+1) array. Every path must start at 0.
  explicit BrownianGrid(Matrix values) : values_(std::move(values)) {
    if (values_.rows() < 1 || values_.cols() < 2) {
      throw std::invalid_argument("BrownianGrid needs m >= 1 and n >= 1");
    }
    if ((values_.col(0).array() != Scalar(0)).any()) {
      throw std::invalid_argument("BrownianGrid paths must start at 0");
    }
  }

  Index paths() const { return values_.rows(); }
  Index steps() const { return values_.cols() - 1; }

  Scalar operator()(Index path, Index k) const { return values_(path, k); }
  const Matrix& values() const { return values_; }

  Scalar time(Index k) const { return Scalar(k) / Scalar(steps()); }

  /// Terminal values (B^1(1), ..., B^m(1)).
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> terminal() const {
    return values_.col(steps());
  }

 private:
  Matrix values_;
};

/// Resolution of simulated increments. Every simulated value is a multiple
/// of this quantum below 2^12 in magnitude, so sums and differences of grid
/// values are exact in double precision: time reversal is a bit-exact
/// involution and partition sums do not depend on association order.
inline constexpr double kIncrementQuantum = 0x1.0p-40;

inline double quantize_increment(double x) {
  return std::nearbyint(x / kIncrementQuantum) * kIncrementQuantum;
}

/// Cumulative sums of n i.i.d. N(0, 1/n) increments per path, path-major
/// draw order, each rounded to kIncrementQuantum.
template <typename Scalar = double>
BrownianGrid<Scalar> simulate(Index m, Index n, RandomStream& stream) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("simulate requires m >= 1 and n >= 1");
  }
  typename BrownianGrid<Scalar>::Matrix values(m, n + 1);
  const double step_sd = std::sqrt(1.0 / static_cast<double>(n));
  for (Index i = 0; i < m; ++i) {
    double level = 0.0;
    values(i, 0) = Scalar(0);
    for (Index k = 1; k <= n; ++k) {
      level += quantize_increment(step_sd * stream.standard_normal());
      values(i, k) = Scalar(level);
    }
  }
  return BrownianGrid<Scalar>(std::move(values));
}

/// C^i(t) = B^{m-i+1}(1) - B^{m-i+1}(1-t): reverses time and the order of
/// the coordinates. An involution that preserves the Brownian law.
template <typename Scalar>
BrownianGrid<Scalar> time_reverse_exchange(const BrownianGrid<Scalar>& grid) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  typename BrownianGrid<Scalar>::Matrix out(m, n + 1);
  for (Index i = 0; i < m; ++i) {
    const Index src = m - 1 - i;
    for (Index k = 0; k <= n; ++k) {
      out(i, k) = grid(src, n) - grid(src, n - k);
    }
  }
  return BrownianGrid<Scalar>(std::move(out));
}

/// Writes `t,B1,...,Bm` rows, 17 significant digits.
void write_paths_csv(std::ostream& out, const BrownianGrid<double>& grid);

}  // namespace gw
