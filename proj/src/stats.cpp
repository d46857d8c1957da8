#include "gw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gw/special.hpp"

namespace gw {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

std::vector<double> sorted_copy(const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const TestReport& report) {
  j = nlohmann::json{{"name", report.name},
                     {"statistic", report.statistic},
                     {"critical_value", report.critical_value},
                     {"p_value", report.p_value},
                     {"sample_size", report.sample_size},
                     {"passed", report.passed}};
}

void from_json(const nlohmann::json& j, TestReport& report) {
  j.at("name").get_to(report.name);
  j.at("statistic").get_to(report.statistic);
  j.at("critical_value").get_to(report.critical_value);
  j.at("p_value").get_to(report.p_value);
  j.at("sample_size").get_to(report.sample_size);
  j.at("passed").get_to(report.passed);
}

TestReport make_report(std::string name, double statistic, double critical,
                       double p_value, std::int64_t sample_size) {
  TestReport report;
  report.name = std::move(name);
  report.statistic = statistic;
  report.critical_value = critical;
  report.p_value = std::clamp(p_value, 0.0, 1.0);
  report.sample_size = sample_size;
  report.passed = statistic < critical;
  return report;
}

double kolmogorov_constant(double alpha) {
  check_alpha(alpha);
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

double alpha_for_sigmas(double sigmas) {
  return std::erfc(sigmas / std::numbers::sqrt2);
}

TestReport ks_one_sample(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         const Cdf& cdf, double alpha, std::string name) {
  if (samples.size() == 0) throw std::invalid_argument("ks_one_sample: empty sample");
  check_alpha(alpha);
  const auto sorted = sorted_copy(samples);
  const auto n = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    distance = std::max({distance, above, below});
  }
  const double root_n = std::sqrt(n);
  return make_report(std::move(name), distance, kolmogorov_constant(alpha) / root_n,
                     special::kolmogorov_survival(root_n * distance),
                     static_cast<std::int64_t>(sorted.size()));
}

TestReport ks_two_sample(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b, double alpha,
                         std::string name) {
  if (a.size() == 0 || b.size() == 0) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  check_alpha(alpha);
  const auto xa = sorted_copy(a);
  const auto xb = sorted_copy(b);
  const auto na = static_cast<double>(xa.size());
  const auto nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    distance = std::max(distance, std::abs(static_cast<double>(i) / na -
                                           static_cast<double>(j) / nb));
  }
  const double effective = std::sqrt(na * nb / (na + nb));
  return make_report(std::move(name), distance, kolmogorov_constant(alpha) / effective,
                     special::kolmogorov_survival(effective * distance),
                     static_cast<std::int64_t>(xa.size() + xb.size()));
}

TestReport chi_square_gof(const std::vector<std::int64_t>& counts,
                          const Eigen::Ref<const Eigen::VectorXd>& expected,
                          double alpha, std::string name) {
  check_alpha(alpha);
  if (counts.size() != static_cast<std::size_t>(expected.size()) || counts.size() < 2) {
    throw std::invalid_argument("chi_square_gof: need at least two matching bins");
  }
  if ((expected.array() < 5.0).any()) {
    throw std::invalid_argument("chi_square_gof: every expected count must be >= 5");
  }
  std::int64_t total = 0;
  for (const auto c : counts) {
    if (c < 0) throw std::invalid_argument("chi_square_gof: negative count");
    total += c;
  }
  if (static_cast<double>(total) != std::round(expected.sum())) {
    throw std::invalid_argument("chi_square_gof: observed and expected totals differ");
  }
  double statistic = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double e = expected(static_cast<Eigen::Index>(k));
    const double diff = static_cast<double>(counts[k]) - e;
    statistic += diff * diff / e;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return make_report(std::move(name), statistic,
                     special::chi_square_quantile_upper(dof, alpha),
                     special::incomplete_gamma_q(0.5 * dof, 0.5 * statistic), total);
}

TestReport moment_z_test(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         double target_mean, double alpha, std::string name) {
  check_alpha(alpha);
  const Eigen::Index n = samples.size();
  if (n < 30) throw std::invalid_argument("moment_z_test: need at least 30 samples");
  const double mean = samples.mean();
  const double variance =
      (samples.array() - mean).square().sum() / static_cast<double>(n - 1);
  const double se = std::sqrt(variance / static_cast<double>(n));
  const double deviation = std::abs(mean - target_mean);
  double statistic;
  if (se > 0.0) {
    statistic = deviation / se;
  } else {
    statistic = deviation == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return make_report(std::move(name), statistic,
                     special::normal_quantile(1.0 - alpha / 2.0),
                     std::erfc(statistic / std::numbers::sqrt2), n);
}

}  // namespace gw
