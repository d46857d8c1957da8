#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "gw/maximizer.hpp"

using gw::BrownianGrid;
using gw::Index;
using gw::RandomStream;

namespace {

BrownianGrid<> random_grid(Index m, Index n, std::uint64_t seed, std::uint64_t id) {
  RandomStream stream({seed, id});
  return gw::simulate<double>(m, n, stream);
}

// Independent oracle: plain left-to-right sum over every monotone tuple,
// generated by an odometer over k_1 <= ... <= k_{m-1}.
double naive_max(const BrownianGrid<>& grid) {
  const Index m = grid.paths();
  const Index n = grid.steps();
  std::vector<Index> k(static_cast<std::size_t>(m + 1), 0);
  k[static_cast<std::size_t>(m)] = n;
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    double sum = 0.0;
    for (Index i = 0; i < m; ++i) {
      sum += grid(i, k[static_cast<std::size_t>(i + 1)]) - grid(i, k[static_cast<std::size_t>(i)]);
    }
    best = std::max(best, sum);
    Index pos = m - 1;
    while (pos >= 1 && k[static_cast<std::size_t>(pos)] == n) --pos;
    if (pos < 1) break;
    const Index next = k[static_cast<std::size_t>(pos)] + 1;
    for (Index j = pos; j < m; ++j) k[static_cast<std::size_t>(j)] = next;
  }
  return best;
}

}  // namespace

TEST_CASE("single path has no free parameters") {
  const auto grid = random_grid(1, 16, 0, 0);
  const auto result = gw::maximize(grid);
  CHECK(result.value == grid(0, 16));
  CHECK(result.theta.size() == 0);
  CHECK(result.gaps.size() == 1);
  CHECK(result.gaps(0) == 1.0);
  const auto brute = gw::brute_force(grid);
  CHECK(brute.value == result.value);
}

TEST_CASE("two paths reduce to the argmax of B1 - B2") {
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto grid = random_grid(2, 64, 1, r);
    double best = -std::numeric_limits<double>::infinity();
    Index arg = 0;
    for (Index k = 0; k <= 64; ++k) {
      const double diff = grid(0, k) - grid(1, k);
      if (diff > best) {
        best = diff;
        arg = k;
      }
    }
    const auto result = gw::maximize(grid);
    CHECK(result.value == grid(1, 64) + best);
    CHECK(result.knots[0] == arg);
    CHECK(result.theta(0) == static_cast<double>(arg) / 64.0);
  }
}

TEST_CASE("m=2, n=2 enumerates three partitions") {
  BrownianGrid<>::Matrix values(2, 3);
  values << 0.0, 2.0, 1.0,   // B1
            0.0, 0.5, 3.0;   // B2
  const BrownianGrid<> grid(values);
  // k1 = 0: 3.0; k1 = 1: 2 + 2.5 = 4.5; k1 = 2: 1 + 0 = 1.
  const auto brute = gw::brute_force(grid);
  CHECK(brute.value == 4.5);
  CHECK(brute.knots == std::vector<Index>{1});
  const auto dp = gw::maximize(grid);
  CHECK(dp.value == 4.5);
  CHECK(dp.knots == std::vector<Index>{1});
  CHECK(dp.gaps(0) == 0.5);
  CHECK(dp.gaps(1) == 0.5);
}

TEST_CASE("exact ties resolve to the earliest indices") {
  BrownianGrid<>::Matrix values(2, 5);
  values << 0.0, 1.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 0.0, 0.0;
  const BrownianGrid<> grid(values);
  CHECK(gw::maximize(grid).knots == std::vector<Index>{1});
  CHECK(gw::brute_force(grid).knots == std::vector<Index>{1});

  BrownianGrid<>::Matrix flat = BrownianGrid<>::Matrix::Zero(3, 5);
  const auto dp = gw::maximize(BrownianGrid<>(flat));
  CHECK(dp.value == 0.0);
  CHECK(dp.knots == std::vector<Index>{0, 0});
  CHECK(gw::brute_force(BrownianGrid<>(flat)).knots == dp.knots);
}

TEST_CASE("m=3, n=8 matches exhaustive enumeration") {
  const auto grid = random_grid(3, 8, 42, 0);
  const auto dp = gw::maximize(grid);
  const auto brute = gw::brute_force(grid);
  CHECK(dp.value == brute.value);
  CHECK(dp.knots == brute.knots);
  CHECK(dp.value == doctest::Approx(naive_max(grid)).epsilon(1e-13));
}

TEST_CASE("oracle equivalence on 1000 random small instances") {
  int checked = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const Index m = 1 + static_cast<Index>(r % 4);
    const Index n = 1 + static_cast<Index>((r / 4) % 12);
    const auto grid = random_grid(m, n, 77, r);
    const auto dp = gw::maximize(grid);
    const auto brute = gw::brute_force(grid);
    REQUIRE(std::abs(dp.value - brute.value) <= 1e-12);
    REQUIRE(dp.knots == brute.knots);
    REQUIRE(std::abs(dp.value - naive_max(grid)) <= 1e-12);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("brute force guard") {
  CHECK(gw::monotone_tuple_count(3, 8) == doctest::Approx(45.0));
  CHECK(gw::monotone_tuple_count(2, 2) == doctest::Approx(3.0));
  const auto grid = random_grid(6, 200, 0, 0);  // C(205, 5) ~ 2.9e9
  CHECK_THROWS_AS(gw::brute_force(grid), std::invalid_argument);
}

TEST_CASE("result invariants: monotone grid fractions, gaps sum to one, recomputation") {
  for (std::uint64_t r = 0; r < 200; ++r) {
    const Index m = 2 + static_cast<Index>(r % 6);
    const Index n = 100 + static_cast<Index>(r);
    const auto grid = random_grid(m, n, 5, r);
    const auto result = gw::maximize(grid);
    REQUIRE(result.theta.size() == m - 1);
    for (Index i = 0; i < m - 1; ++i) {
      REQUIRE(result.theta(i) >= 0.0);
      REQUIRE(result.theta(i) <= 1.0);
      if (i > 0) REQUIRE(result.theta(i) >= result.theta(i - 1));
      REQUIRE(result.theta(i) == static_cast<double>(result.knots[static_cast<std::size_t>(i)]) /
                                     static_cast<double>(n));
    }
    REQUIRE((result.gaps.array() >= 0.0).all());
    REQUIRE(std::abs(result.gaps.sum() - 1.0) <= 4 * std::numeric_limits<double>::epsilon());
    REQUIRE(gw::partition_sum(grid, result.knots) == result.value);
    REQUIRE(gw::evaluate_partition(grid, result.theta) == result.value);
  }
}

TEST_CASE("pathwise time reversal mirrors the maximizer") {
  for (std::uint64_t r = 0; r < 300; ++r) {
    const Index m = 2 + static_cast<Index>(r % 4);
    const Index n = 512;
    const auto grid = random_grid(m, n, 6, r);
    const auto forward = gw::maximize(grid);
    const auto reversed = gw::maximize(gw::time_reverse_exchange(grid));
    // Simulated values sit on an exact lattice, so equality is exact.
    REQUIRE(forward.value == reversed.value);
    for (Index i = 0; i < m - 1; ++i) {
      REQUIRE(reversed.knots[static_cast<std::size_t>(i)] ==
              n - forward.knots[static_cast<std::size_t>(m - 2 - i)]);
    }
  }
}

TEST_CASE("scaling by a positive power of two scales the value exactly") {
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto grid = random_grid(4, 256, 8, r);
    const double c = (r % 2 == 0) ? 4.0 : 0.125;
    const BrownianGrid<> scaled(BrownianGrid<>::Matrix(c * grid.values()));
    const auto base = gw::maximize(grid);
    const auto big = gw::maximize(scaled);
    REQUIRE(big.value == c * base.value);
    REQUIRE(big.knots == base.knots);
  }
}

TEST_CASE("scaling by a generic constant keeps the argmax") {
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto grid = random_grid(3, 256, 18, r);
    const BrownianGrid<> scaled(BrownianGrid<>::Matrix(2.7 * grid.values()));
    const auto base = gw::maximize(grid);
    const auto other = gw::maximize(scaled);
    REQUIRE(other.knots == base.knots);
    REQUIRE(other.value == doctest::Approx(2.7 * base.value).epsilon(1e-13));
  }
}

TEST_CASE("adding a path never lowers the maximum") {
  for (std::uint64_t r = 0; r < 300; ++r) {
    const Index m = 1 + static_cast<Index>(r % 5);
    const auto grid = random_grid(m + 1, 300, 10, r);
    const BrownianGrid<> smaller(BrownianGrid<>::Matrix(grid.values().topRows(m)));
    REQUIRE(gw::maximize(grid).value >= gw::maximize(smaller).value);
  }
}

TEST_CASE("evaluate_partition snapping and validation") {
  BrownianGrid<>::Matrix values(2, 5);
  values << 0.0, 1.0, 2.0, 3.0, 4.0,
            0.0, -1.0, 5.0, 2.0, 7.0;
  const BrownianGrid<> grid(values);
  Eigen::VectorXd theta(1);
  theta << 0.0;
  CHECK(gw::evaluate_partition(grid, theta) == 7.0);  // B2(1) - B2(0)
  theta << 0.125;  // 0.125 * 4 = 0.5 rounds up to knot 1
  CHECK(gw::evaluate_partition(grid, theta) == 1.0 + (7.0 - -1.0));
  theta << 0.37;  // 1.48 -> knot 1
  CHECK(gw::evaluate_partition(grid, theta) == 9.0);
  theta << 1.5;
  CHECK_THROWS_AS(gw::evaluate_partition(grid, theta), std::invalid_argument);
  theta << -0.1;
  CHECK_THROWS_AS(gw::evaluate_partition(grid, theta), std::invalid_argument);
  Eigen::VectorXd wrong(2);
  wrong << 0.2, 0.3;
  CHECK_THROWS_AS(gw::evaluate_partition(grid, wrong), std::invalid_argument);

  const auto g3 = random_grid(3, 10, 1, 1);
  Eigen::VectorXd backwards(2);
  backwards << 0.6, 0.4;
  CHECK_THROWS_AS(gw::evaluate_partition(g3, backwards), std::invalid_argument);
}

TEST_CASE("random partitions never beat the maximum") {
  RandomStream picks({99, 0});
  for (std::uint64_t r = 0; r < 100; ++r) {
    const Index m = 2 + static_cast<Index>(r % 5);
    const auto grid = random_grid(m, 128, 12, r);
    const double best = gw::maximize(grid).value;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd theta(m - 1);
      for (auto& t : theta) t = picks.uniform();
      std::sort(theta.begin(), theta.end());
      REQUIRE(gw::evaluate_partition(grid, theta) <= best);
    }
  }
}

TEST_CASE("float instantiation agrees with double on the argmax") {
  RandomStream stream({3, 3});
  const auto grid = gw::simulate<double>(3, 64, stream);
  const BrownianGrid<float> narrow(BrownianGrid<float>::Matrix(grid.values().cast<float>()));
  const auto wide = gw::maximize(grid);
  const auto small = gw::maximize(narrow);
  CHECK(small.value == doctest::Approx(wide.value).epsilon(1e-5));
}
