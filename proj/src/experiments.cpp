#include "gw/experiments.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gw/distributions.hpp"
#include "gw/gue.hpp"
#include "gw/maximizer.hpp"
#include "gw/parallel.hpp"
#include "gw/special.hpp"

namespace gw {

namespace {

const double kThreeSigmaAlpha = alpha_for_sigmas(3.0);

std::string indexed(const std::string& stem, Index i, const std::string& suffix = "") {
  return stem + "_" + std::to_string(i) + suffix;
}

Cdf beta_cdf_of(double a, double b) {
  const BetaSpec spec(a, b);
  return [spec](double x) { return beta_cdf(spec, std::clamp(x, 0.0, 1.0)); };
}

TestReport fraction_report(std::string name, const Eigen::VectorXd& samples,
                           double threshold, bool below, double target) {
  const auto n = static_cast<double>(samples.size());
  const double hits = below ? (samples.array() < threshold).cast<double>().sum()
                            : (samples.array() > threshold).cast<double>().sum();
  const double fraction = hits / n;
  const double se = std::sqrt(target * (1.0 - target) / n);
  const double z = std::abs(fraction - target) / se;
  return make_report(std::move(name), z, 3.0, std::erfc(z / std::numbers::sqrt2),
                     samples.size());
}

}  // namespace

void CampaignConfig::validate() const {
  if (m < 2) throw std::invalid_argument("campaign: m must be >= 2");
  if (n_grid < 1) throw std::invalid_argument("campaign: n_grid must be >= 1");
  if (n_replicas < 1) throw std::invalid_argument("campaign: n_replicas must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("campaign: alpha must lie in (0, 1)");
  if (workers < 1) throw std::invalid_argument("campaign: workers must be >= 1");
}

void CampaignConfig::validate_statistical() const {
  validate();
  if (n_grid < 64) throw std::invalid_argument("campaign: n_grid must be >= 64");
  if (n_replicas < 1000) throw std::invalid_argument("campaign: n_replicas must be >= 1000");
}

ThetaSampleSet run_theta_campaign(const CampaignConfig& config) {
  config.validate();
  ThetaSampleSet set;
  set.m = config.m;
  set.n_grid = config.n_grid;
  set.n_replicas = config.n_replicas;
  set.thetas.resize(config.n_replicas, config.m - 1);
  set.gaps.resize(config.n_replicas, config.m);
  set.d_values.resize(config.n_replicas);
  parallel_for(config.n_replicas, config.workers, [&](Index r) {
    RandomStream stream({config.master_seed, static_cast<std::uint64_t>(r)});
    const auto grid = simulate<double>(config.m, config.n_grid, stream);
    const auto result = maximize(grid);
    set.thetas.row(r) = result.theta.transpose();
    set.gaps.row(r) = result.gaps.transpose();
    set.d_values(r) = result.value;
  });
  return set;
}

std::vector<TestReport> theta_law_reports(const ThetaSampleSet& set, double alpha) {
  const Index m = set.m;
  const auto md = static_cast<double>(m);
  std::vector<TestReport> reports;

  const double sum_error = (set.gaps.rowwise().sum().array() - 1.0).abs().maxCoeff();
  reports.push_back(make_report("gap_sum_error", sum_error, md * DBL_EPSILON,
                                sum_error < md * DBL_EPSILON ? 1.0 : 0.0, set.n_replicas));

  if (m == 2) {
    const Eigen::VectorXd theta = set.thetas.col(0);
    reports.push_back(ks_one_sample(theta, beta_cdf_of(0.5, 0.5), alpha, "ks_theta_1_arcsine"));
    const double sqrt2 = std::numbers::sqrt2;
    reports.push_back(fraction_report("quartile_lower_fraction", theta,
                                      (2.0 - sqrt2) / 4.0, true, 0.25));
    reports.push_back(fraction_report("quartile_upper_fraction", theta,
                                      (2.0 + sqrt2) / 4.0, false, 0.25));
  }

  for (Index i = 1; i <= m; ++i) {
    reports.push_back(ks_one_sample(set.gaps.col(i - 1), beta_cdf_of(0.5, 0.5 * (md - 1.0)),
                                    alpha, indexed("ks_gap", i, "_beta")));
  }
  if (m >= 3) {
    reports.push_back(ks_one_sample(set.thetas.col(m - 2), beta_cdf_of(0.5 * (md - 1.0), 0.5),
                                    alpha, indexed("ks_theta", m - 1, "_beta")));
  }
  for (Index i = 1; i < m; ++i) {
    reports.push_back(moment_z_test(set.thetas.col(i - 1), static_cast<double>(i) / md,
                                    kThreeSigmaAlpha, indexed("mean_theta", i)));
  }
  if (m >= 20) {
    const Eigen::VectorXd pooled = set.thetas.reshaped();
    auto report = ks_one_sample(pooled, [](double x) { return std::clamp(x, 0.0, 1.0); },
                                alpha, "pooled_theta_uniform_distance");
    report.critical_value = 0.05;
    report.passed = report.statistic < report.critical_value;
    reports.push_back(report);
  }
  return reports;
}

std::vector<TestReport> test_time_reversal(const ThetaSampleSet& a,
                                           const ThetaSampleSet& b, double alpha) {
  if (a.m != b.m || a.n_grid != b.n_grid || a.n_replicas != b.n_replicas) {
    throw std::invalid_argument("test_time_reversal: campaign configurations differ");
  }
  std::vector<TestReport> reports;
  const Index m = a.m;
  for (Index i = 1; i < m; ++i) {
    const Eigen::VectorXd mirrored = 1.0 - b.thetas.col(m - i - 1).array();
    reports.push_back(ks_two_sample(a.thetas.col(i - 1), mirrored, alpha,
                                    indexed("ks_time_reversal_theta", i)));
  }
  return reports;
}

PathwiseReversalSummary check_pathwise_reversal(const CampaignConfig& config,
                                                Index replicas) {
  config.validate();
  const Index count = std::min(replicas, config.n_replicas);
  std::vector<char> mismatch(static_cast<std::size_t>(count), 0);
  Eigen::VectorXd diff(count);
  parallel_for(count, config.workers, [&](Index r) {
    RandomStream stream({config.master_seed, static_cast<std::uint64_t>(r)});
    const auto grid = simulate<double>(config.m, config.n_grid, stream);
    const auto forward = maximize(grid);
    const auto reversed = maximize(time_reverse_exchange(grid));
    diff(r) = std::abs(forward.value - reversed.value);
    const auto inner = forward.knots.size();
    bool same = reversed.knots.size() == inner;
    for (std::size_t i = 0; same && i < inner; ++i) {
      same = reversed.knots[i] == config.n_grid - forward.knots[inner - 1 - i];
    }
    mismatch[static_cast<std::size_t>(r)] = same ? 0 : 1;
  });
  PathwiseReversalSummary summary;
  summary.replicas = count;
  summary.theta_mismatches = std::count(mismatch.begin(), mismatch.end(), 1);
  summary.max_value_difference = count > 0 ? diff.maxCoeff() : 0.0;
  return summary;
}

std::vector<TestReport> pathwise_reversal_reports(const PathwiseReversalSummary& summary) {
  return {
      make_report("pathwise_reversal_theta_mismatches",
                  static_cast<double>(summary.theta_mismatches), 0.5,
                  summary.theta_mismatches == 0 ? 1.0 : 0.0, summary.replicas),
      make_report("pathwise_reversal_max_value_difference", summary.max_value_difference,
                  1e-12, summary.max_value_difference < 1e-12 ? 1.0 : 0.0,
                  summary.replicas),
  };
}

std::vector<TestReport> test_gue_identity(Index m, Index n_grid, Index n_replicas,
                                          double alpha, SeedSpec seed, unsigned workers) {
  if (m < 1 || n_grid < 1 || n_replicas < 2) {
    throw std::invalid_argument("test_gue_identity: need m >= 1, n_grid >= 1, n_replicas >= 2");
  }
  Eigen::VectorXd d_values(n_replicas);
  Eigen::VectorXd lambdas(n_replicas);
  const std::uint64_t gue_master = derive_seed(seed.master_seed, seed_tags::kGueSide);
  parallel_for(n_replicas, workers, [&](Index r) {
    RandomStream path_stream({seed.master_seed, static_cast<std::uint64_t>(r)});
    d_values(r) = maximize(simulate<double>(m, n_grid, path_stream)).value;
    RandomStream gue_stream({gue_master, static_cast<std::uint64_t>(r)});
    lambdas(r) = largest_eigenvalue(sample_tridiagonal(m, gue_stream));
  });

  const std::string suffix = "_m" + std::to_string(m);
  std::vector<TestReport> reports;
  reports.push_back(ks_two_sample(d_values, lambdas, alpha, "ks_gue_identity" + suffix));

  const auto n = static_cast<double>(n_replicas);
  auto variance = [n](const Eigen::VectorXd& v) {
    return (v.array() - v.mean()).square().sum() / (n - 1.0);
  };
  const double se = std::sqrt(variance(d_values) / n + variance(lambdas) / n);
  const double difference = d_values.mean() - lambdas.mean();
  reports.push_back(make_report("gue_mean_difference" + suffix, std::abs(difference),
                                3.0 * se + kGridBiasAllowance,
                                std::erfc(std::abs(difference) / se / std::numbers::sqrt2),
                                2 * n_replicas));
  const double z = difference / se;
  reports.push_back(make_report("gue_bias_sign" + suffix, z, 3.0,
                                0.5 * std::erfc(z / std::numbers::sqrt2), 2 * n_replicas));
  return reports;
}

Eigen::VectorXd empirical_dn_profile(const BrownianGrid<double>& grid,
                                     const std::vector<Index>& sample_counts,
                                     RandomStream& stream) {
  if (sample_counts.empty() || sample_counts.front() < 1 ||
      !std::is_sorted(sample_counts.begin(), sample_counts.end())) {
    throw std::invalid_argument("empirical_dn: sample counts must be positive and ascending");
  }
  const auto spec = DirichletSpec::symmetric(grid.paths(), 0.5);
  Eigen::VectorXd out(static_cast<Index>(sample_counts.size()));
  double best = -std::numeric_limits<double>::infinity();
  Index drawn = 0;
  for (std::size_t c = 0; c < sample_counts.size(); ++c) {
    for (; drawn < sample_counts[c]; ++drawn) {
      const Eigen::VectorXd theta = gaps_to_theta(sample_dirichlet(spec, stream));
      best = std::max(best, evaluate_partition(grid, theta));
    }
    out(static_cast<Index>(c)) = best;
  }
  return out;
}

EmpiricalMaxResult empirical_dn(const BrownianGrid<double>& grid, Index sample_count,
                                RandomStream& stream) {
  if (sample_count < 1) throw std::invalid_argument("empirical_dn: sample_count must be >= 1");
  EmpiricalMaxResult result;
  result.d_n_m = empirical_dn_profile(grid, {sample_count}, stream)(0);
  result.d_m = maximize(grid).value;
  result.sample_count = sample_count;
  return result;
}

EmpiricalStudy run_empirical_study(Index m, Index n_grid, Index grids,
                                   std::vector<Index> sample_counts,
                                   std::uint64_t master_seed, unsigned workers) {
  if (m < 1 || n_grid < 1 || grids < 2) {
    throw std::invalid_argument("empirical study: need m >= 1, n_grid >= 1, grids >= 2");
  }
  std::sort(sample_counts.begin(), sample_counts.end());
  const auto counts = static_cast<Index>(sample_counts.size());
  EmpiricalStudy study;
  study.sample_counts = sample_counts;
  study.d_n_m.resize(grids, counts);
  study.d_m.resize(grids);
  const std::uint64_t point_master = derive_seed(master_seed, seed_tags::kPointSets);
  parallel_for(grids, workers, [&](Index g) {
    RandomStream path_stream({master_seed, static_cast<std::uint64_t>(g)});
    const auto grid = simulate<double>(m, n_grid, path_stream);
    RandomStream point_stream({point_master, static_cast<std::uint64_t>(g)});
    study.d_n_m.row(g) = empirical_dn_profile(grid, sample_counts, point_stream).transpose();
    study.d_m(g) = maximize(grid).value;
  });
  const Eigen::MatrixXd gap = (-study.d_n_m).colwise() + study.d_m;
  study.dominance_violations = (gap.array() < 0.0).count();
  study.mean_gap = gap.colwise().mean().transpose();
  study.se_gap.resize(counts);
  for (Index c = 0; c < counts; ++c) {
    const double var = (gap.col(c).array() - study.mean_gap(c)).square().sum() /
                       static_cast<double>(grids - 1);
    study.se_gap(c) = std::sqrt(var / static_cast<double>(grids));
  }
  return study;
}

std::vector<TestReport> empirical_reports(const EmpiricalStudy& study) {
  const Index grids = study.d_m.size();
  std::vector<TestReport> reports;
  reports.push_back(make_report("empirical_dominance_violations",
                                static_cast<double>(study.dominance_violations), 0.5,
                                study.dominance_violations == 0 ? 1.0 : 0.0, grids));
  Index increases = 0;
  for (Index c = 1; c < study.mean_gap.size(); ++c) {
    if (!(study.mean_gap(c) < study.mean_gap(c - 1))) ++increases;
  }
  reports.push_back(make_report("empirical_mean_gap_non_decreasing_steps",
                                static_cast<double>(increases), 0.5,
                                increases == 0 ? 1.0 : 0.0, grids));
  return reports;
}

JointObservables record_joint_observables(const BrownianGrid<double>& grid) {
  const auto result = maximize(grid);
  return {result.theta, result.value, grid.terminal()};
}

std::vector<JointObservables> run_joint_campaign(const CampaignConfig& config) {
  config.validate();
  std::vector<JointObservables> rows(static_cast<std::size_t>(config.n_replicas));
  parallel_for(config.n_replicas, config.workers, [&](Index r) {
    RandomStream stream({config.master_seed, static_cast<std::uint64_t>(r)});
    rows[static_cast<std::size_t>(r)] =
        record_joint_observables(simulate<double>(config.m, config.n_grid, stream));
  });
  return rows;
}

std::vector<TestReport> refine_reports(const CampaignConfig& config,
                                       const std::vector<TestReport>& base_reports) {
  CampaignConfig refined = config;
  refined.n_grid = 2 * config.n_grid;
  const auto fine = theta_law_reports(run_theta_campaign(refined), config.alpha);
  std::map<std::string, const TestReport*> coarse;
  for (const auto& report : base_reports) coarse[report.name] = &report;
  std::vector<TestReport> reports;
  for (const auto& report : fine) {
    if (report.name.rfind("ks_", 0) != 0) continue;
    const auto it = coarse.find(report.name);
    if (it == coarse.end()) continue;
    const double ceiling = std::max(it->second->statistic, it->second->critical_value);
    reports.push_back(make_report("refine_" + report.name, report.statistic, ceiling,
                                  report.p_value, report.sample_size));
  }
  return reports;
}

bool all_passed(const std::vector<TestReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const TestReport& r) { return r.passed; });
}

}  // namespace gw
