#include "gw/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gw/special.hpp"

namespace gw {

BetaSpec::BetaSpec(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("BetaSpec: a and b must be positive");
  }
}

DirichletSpec::DirichletSpec(Eigen::VectorXd alphas) : alphas_(std::move(alphas)) {
  if (alphas_.size() < 1 || !(alphas_.array() > 0.0).all()) {
    throw std::invalid_argument("DirichletSpec: alphas must be nonempty and positive");
  }
}

DirichletSpec DirichletSpec::symmetric(Eigen::Index components, double alpha) {
  return DirichletSpec(Eigen::VectorXd::Constant(components, alpha));
}

double f_m_density(const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const Eigen::Index inner = theta.size();
  if (inner < 1) throw std::invalid_argument("f_m_density: requires m >= 2");
  double previous = 0.0;
  double log_product = 0.0;
  for (Eigen::Index i = 0; i < inner; ++i) {
    const double gap = theta(i) - previous;
    if (!(gap > 0.0)) {
      throw std::invalid_argument("f_m_density: theta must be strictly increasing in (0, 1)");
    }
    log_product += std::log(gap);
    previous = theta(i);
  }
  const double last = 1.0 - previous;
  if (!(last > 0.0)) {
    throw std::invalid_argument("f_m_density: theta must be strictly increasing in (0, 1)");
  }
  log_product += std::log(last);
  const double m = static_cast<double>(inner + 1);
  return std::exp(special::log_gamma(0.5 * m) - 0.5 * m * std::log(std::numbers::pi) -
                  0.5 * log_product);
}

double beta_density(const BetaSpec& spec, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::invalid_argument("beta_density: x must lie in (0, 1)");
  }
  const double a = spec.a();
  const double b = spec.b();
  return std::exp(special::log_gamma(a + b) - special::log_gamma(a) -
                  special::log_gamma(b) + (a - 1.0) * std::log(x) +
                  (b - 1.0) * std::log1p(-x));
}

double beta_cdf(const BetaSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("beta_cdf: x must lie in [0, 1]");
  }
  return special::incomplete_beta(spec.a(), spec.b(), x);
}

double sample_gamma(double shape, RandomStream& stream) {
  if (!(shape > 0.0)) throw std::invalid_argument("sample_gamma: shape must be positive");
  if (shape < 1.0) {
    const double boosted = sample_gamma(shape + 1.0, stream);
    return boosted * std::pow(stream.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

Eigen::VectorXd sample_dirichlet(const DirichletSpec& spec, RandomStream& stream) {
  Eigen::VectorXd draws(spec.size());
  for (Eigen::Index k = 0; k < spec.size(); ++k) {
    draws(k) = sample_gamma(spec.alphas()(k), stream);
  }
  return draws / draws.sum();
}

Eigen::VectorXd gaps_to_theta(const Eigen::Ref<const Eigen::VectorXd>& gaps) {
  if (gaps.size() < 1) throw std::invalid_argument("gaps_to_theta: empty gap vector");
  Eigen::VectorXd theta(gaps.size() - 1);
  double running = 0.0;
  for (Eigen::Index i = 0; i + 1 < gaps.size(); ++i) {
    running += gaps(i);
    theta(i) = std::min(running, 1.0);
  }
  return theta;
}

}  // namespace gw
