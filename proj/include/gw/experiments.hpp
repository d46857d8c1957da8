#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gw/brownian.hpp"
#include "gw/rng.hpp"
#include "gw/stats.hpp"

namespace gw {

/// Seed-derivation tags separating the independent sub-experiments that
/// share one user-facing master seed.
namespace seed_tags {
inline constexpr std::uint64_t kMirrorCampaign = 0x4D4952524F52ULL;
inline constexpr std::uint64_t kGueSide = 0x475545ULL;
inline constexpr std::uint64_t kPointSets = 0x504F494E5453ULL;
}  // namespace seed_tags

struct CampaignConfig {
  Index m = 2;
  Index n_grid = 4096;
  Index n_replicas = 2000;
  double alpha = 0.01;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;

  /// Structural checks: m >= 2, n_grid >= 1, n_replicas >= 1, alpha in (0,1).
  void validate() const;
  /// Adds the sample-size floor for statistical campaigns: n_grid >= 64,
  /// n_replicas >= 1000.
  void validate_statistical() const;
};

/// Replicated maximizers; row r comes from stream (master_seed, r).
struct ThetaSampleSet {
  Index m = 0;
  Index n_grid = 0;
  Index n_replicas = 0;
  Eigen::MatrixXd thetas;    // n_replicas x (m-1)
  Eigen::MatrixXd gaps;      // n_replicas x m
  Eigen::VectorXd d_values;  // n_replicas
};

ThetaSampleSet run_theta_campaign(const CampaignConfig& config);

/// Goodness-of-fit suite for one campaign: gap sums, Beta(1/2, (m-1)/2) gap
/// marginals, Beta((m-1)/2, 1/2) law of the last maximizer, mean spacing
/// E theta_i = i/m (3 SE band), and for m = 2 the arcsine law and its
/// quartile fractions. For m >= 20 the pooled maximizers are compared with
/// the uniform law at KS distance 0.05.
std::vector<TestReport> theta_law_reports(const ThetaSampleSet& set, double alpha);

/// Two-sample KS between theta_i of `a` and 1 - theta_{m-i} of `b`, one
/// report per i. The two sets must come from independent seeds.
std::vector<TestReport> test_time_reversal(const ThetaSampleSet& a,
                                           const ThetaSampleSet& b, double alpha);

struct PathwiseReversalSummary {
  Index replicas = 0;
  Index theta_mismatches = 0;
  double max_value_difference = 0.0;
};

/// Re-simulates the first `replicas` grids of `config` and checks that
/// maximizing the time-reversed grid gives the same value and the mirrored
/// knots n - k_{m-i}.
PathwiseReversalSummary check_pathwise_reversal(const CampaignConfig& config,
                                                Index replicas);
std::vector<TestReport> pathwise_reversal_reports(const PathwiseReversalSummary& summary);

/// KS between D_m on n_replicas grids and n_replicas largest GUE
/// eigenvalues, plus a mean-difference report (3 combined SE + 0.02
/// discretization allowance) and a bias-sign report (grid D_m may sit below
/// the GUE mean but not above it by more than 3 SE).
std::vector<TestReport> test_gue_identity(Index m, Index n_grid, Index n_replicas,
                                          double alpha, SeedSpec seed,
                                          unsigned workers = 1);

inline constexpr double kGridBiasAllowance = 0.02;

struct EmpiricalMaxResult {
  double d_n_m = 0.0;
  double d_m = 0.0;
  Index sample_count = 0;
};

/// Restricted maximum over `sample_count` Dirichlet(1/2, ..., 1/2) point
/// sets, alongside the DP maximum on the same grid.
EmpiricalMaxResult empirical_dn(const BrownianGrid<double>& grid, Index sample_count,
                                RandomStream& stream);

/// Prefix maxima of one sequence of point sets, read off at each entry of
/// `sample_counts` (ascending).
Eigen::VectorXd empirical_dn_profile(const BrownianGrid<double>& grid,
                                     const std::vector<Index>& sample_counts,
                                     RandomStream& stream);

struct EmpiricalStudy {
  std::vector<Index> sample_counts;
  Eigen::MatrixXd d_n_m;     // grids x counts
  Eigen::VectorXd d_m;       // grids
  Eigen::VectorXd mean_gap;  // per count: mean(d_m - d_n_m)
  Eigen::VectorXd se_gap;
  Index dominance_violations = 0;
};

EmpiricalStudy run_empirical_study(Index m, Index n_grid, Index grids,
                                   std::vector<Index> sample_counts,
                                   std::uint64_t master_seed, unsigned workers = 1);

std::vector<TestReport> empirical_reports(const EmpiricalStudy& study);

struct JointObservables {
  Eigen::VectorXd theta;
  double d_value = 0.0;
  Eigen::VectorXd terminal_values;
};

JointObservables record_joint_observables(const BrownianGrid<double>& grid);

/// One row per replica; replica r uses stream (master_seed, r).
std::vector<JointObservables> run_joint_campaign(const CampaignConfig& config);

/// Re-runs the KS checks of `base_reports` on a campaign at twice the grid
/// resolution. A refined check passes when its statistic stays below the
/// larger of the coarse statistic and the coarse critical value.
std::vector<TestReport> refine_reports(const CampaignConfig& config,
                                       const std::vector<TestReport>& base_reports);

bool all_passed(const std::vector<TestReport>& reports);

}  // namespace gw
