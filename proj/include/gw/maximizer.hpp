#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gw/brownian.hpp"

namespace gw {

/// Largest admissible tuple count for brute_force.
inline constexpr double kBruteForceGuard = 1e7;

/// D_m on a grid together with its maximizing partition. `knots` holds the
/// grid indices k_1 <= ... <= k_{m-1}; theta = knots / n and
/// gaps_i = (k_i - k_{i-1}) / n with k_0 = 0 and k_m = n.
template <typename Scalar = double>
struct MaximizerResult {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Scalar value{};
  std::vector<Index> knots;
  Vector theta;
  Vector gaps;
  Index steps = 0;
};

namespace detail {

template <typename Scalar>
MaximizerResult<Scalar> make_result(Scalar value, std::vector<Index> knots,
                                    Index n) {
  MaximizerResult<Scalar> result;
  result.value = value;
  result.steps = n;
  const auto inner = static_cast<Index>(knots.size());
  result.theta.resize(inner);
  result.gaps.resize(inner + 1);
  Index previous = 0;
  for (Index i = 0; i < inner; ++i) {
    result.theta(i) = Scalar(knots[i]) / Scalar(n);
    result.gaps(i) = Scalar(knots[i] - previous) / Scalar(n);
    previous = knots[i];
  }
  result.gaps(inner) = Scalar(n - previous) / Scalar(n);
  result.knots = std::move(knots);
  return result;
}

}  // namespace detail

/// Partition sum at grid indices `knots` (size m-1, nondecreasing).
/// Associates the additions exactly as maximize() does, so the sum at the
/// argmax reproduces maximize().value bit for bit.
template <typename Scalar>
Scalar partition_sum(const BrownianGrid<Scalar>& grid,
                     const std::vector<Index>& knots) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  if (static_cast<Index>(knots.size()) != m - 1) {
    throw std::invalid_argument("partition_sum: need m-1 knots");
  }
  Index previous = 0;
  for (const Index k : knots) {
    if (k < previous || k > n) {
      throw std::invalid_argument("partition_sum: knots must be monotone in [0, n]");
    }
    previous = k;
  }
  if (m == 1) return grid(0, n);
  Scalar acc = grid(0, knots[0]);
  for (Index i = 1; i < m; ++i) {
    const Index upper = (i == m - 1) ? n : knots[i];
    acc = grid(i, upper) + (acc - grid(i, knots[i - 1]));
  }
  return acc;
}

/// O(m n) dynamic program
///   best(i, k) = B^i(k) + max_{j <= k} (best(i-1, j) - B^i(j)),
/// with a running prefix maximum and traceback. Ties keep the earliest grid
/// index, so the traceback returns the argmax with the smallest k_{m-1},
/// then the smallest k_{m-2}, and so on.
template <typename Scalar>
MaximizerResult<Scalar> maximize(const BrownianGrid<Scalar>& grid) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  if (m == 1) return detail::make_result<Scalar>(grid(0, n), {}, n);

  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> arg(
      m - 1, n + 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> best = grid.values().row(0).transpose();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> next(n + 1);

  for (Index i = 1; i < m; ++i) {
    Scalar running = -std::numeric_limits<Scalar>::infinity();
    Index running_arg = 0;
    for (Index k = 0; k <= n; ++k) {
      const Scalar candidate = best(k) - grid(i, k);
      if (candidate > running) {
        running = candidate;
        running_arg = k;
      }
      next(k) = grid(i, k) + running;
      arg(i - 1, k) = running_arg;
    }
    best.swap(next);
  }

  std::vector<Index> knots(static_cast<std::size_t>(m - 1));
  Index k = n;
  for (Index i = m - 1; i >= 1; --i) {
    k = arg(i - 1, k);
    knots[static_cast<std::size_t>(i - 1)] = k;
  }
  return detail::make_result(best(n), std::move(knots), n);
}

/// Number of nondecreasing (m-1)-tuples in {0..n}: C(n+m-1, m-1).
inline double monotone_tuple_count(Index m, Index n) {
  double count = 1.0;
  for (Index j = 1; j <= m - 1; ++j) {
    count = count * static_cast<double>(n + j) / static_cast<double>(j);
  }
  return count;
}

namespace detail {

template <typename Scalar>
void enumerate_tuples(const BrownianGrid<Scalar>& grid, std::vector<Index>& knots,
                      Index position, Index upper, Scalar& best_value,
                      std::vector<Index>& best_knots, bool& found) {
  if (position < 0) {
    const Scalar value = partition_sum(grid, knots);
    if (!found || value > best_value) {
      best_value = value;
      best_knots = knots;
      found = true;
    }
    return;
  }
  // Outer positions vary slowest: tuples are visited in colexicographic
  // order, so a strict '>' keeps the same argmax the DP traceback returns.
  for (Index k = 0; k <= upper; ++k) {
    knots[static_cast<std::size_t>(position)] = k;
    enumerate_tuples(grid, knots, position - 1, k, best_value, best_knots, found);
  }
}

}  // namespace detail

/// Exhaustive enumeration oracle for maximize(). Rejects instances with
/// more than kBruteForceGuard tuples.
template <typename Scalar>
MaximizerResult<Scalar> brute_force(const BrownianGrid<Scalar>& grid) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  if (monotone_tuple_count(m, n) > kBruteForceGuard) {
    throw std::invalid_argument("brute_force: instance exceeds enumeration guard");
  }
  std::vector<Index> knots(static_cast<std::size_t>(m - 1), 0);
  std::vector<Index> best_knots = knots;
  Scalar best_value{};
  bool found = false;
  detail::enumerate_tuples(grid, knots, m - 2, n, best_value, best_knots, found);
  return detail::make_result(best_value, std::move(best_knots), n);
}

/// Snaps theta (size m-1, nondecreasing, in [0,1]) to grid indices with
/// round-half-up and returns the partition sum there.
template <typename Scalar, typename Derived>
Scalar evaluate_partition(const BrownianGrid<Scalar>& grid,
                          const Eigen::MatrixBase<Derived>& theta) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  if (theta.size() != m - 1) {
    throw std::invalid_argument("evaluate_partition: theta must have m-1 entries");
  }
  std::vector<Index> knots(static_cast<std::size_t>(m - 1));
  double previous = 0.0;
  for (Index i = 0; i < theta.size(); ++i) {
    const double t = static_cast<double>(theta(i));
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("evaluate_partition: theta out of [0, 1]");
    }
    if (t < previous) {
      throw std::invalid_argument("evaluate_partition: theta not monotone");
    }
    previous = t;
    knots[static_cast<std::size_t>(i)] =
        static_cast<Index>(std::floor(t * static_cast<double>(n) + 0.5));
  }
  return partition_sum(grid, knots);
}

}  // namespace gw
