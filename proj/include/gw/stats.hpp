#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gw {

/// Outcome of one statistical check. `passed` is always
/// statistic < critical_value.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 1.0;
  std::int64_t sample_size = 0;
  bool passed = false;
};

void to_json(nlohmann::json& j, const TestReport& report);
void from_json(const nlohmann::json& j, TestReport& report);

/// Builds a report with passed = statistic < critical.
TestReport make_report(std::string name, double statistic, double critical,
                       double p_value, std::int64_t sample_size);

/// c(alpha) = sqrt(-ln(alpha/2) / 2), the asymptotic Kolmogorov constant.
double kolmogorov_constant(double alpha);

using Cdf = std::function<double(double)>;

/// One-sample Kolmogorov-Smirnov test with asymptotic critical value
/// c(alpha)/sqrt(N) and Kolmogorov-series p-value.
TestReport ks_one_sample(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         const Cdf& cdf, double alpha,
                         std::string name = "ks_one_sample");

/// Two-sample KS; critical value c(alpha) sqrt((Na + Nb) / (Na Nb)).
TestReport ks_two_sample(const Eigen::Ref<const Eigen::VectorXd>& a,
                         const Eigen::Ref<const Eigen::VectorXd>& b, double alpha,
                         std::string name = "ks_two_sample");

/// Pearson chi-square goodness of fit with K-1 degrees of freedom. Requires
/// sum(counts) == round(sum(expected)) and every expected >= 5.
TestReport chi_square_gof(const std::vector<std::int64_t>& counts,
                          const Eigen::Ref<const Eigen::VectorXd>& expected,
                          double alpha, std::string name = "chi_square_gof");

/// |mean - target| / (sd / sqrt(N)) against the two-sided normal quantile.
/// Requires N >= 30.
TestReport moment_z_test(const Eigen::Ref<const Eigen::VectorXd>& samples,
                         double target_mean, double alpha,
                         std::string name = "moment_z_test");

/// Two-sided alpha whose normal critical value is `sigmas`.
double alpha_for_sigmas(double sigmas);

}  // namespace gw
