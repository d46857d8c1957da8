#include "gw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "gw/brownian.hpp"
#include "gw/distributions.hpp"
#include "gw/experiments.hpp"
#include "gw/gue.hpp"
#include "gw/io.hpp"
#include "gw/maximizer.hpp"

namespace gw::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutDirEnv = "GW_OUT_DIR";

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  throw CLI::ValidationError("--out", std::string("required (or set ") + kOutDirEnv + ")");
}

/// Timestamps live only here so the data files stay byte-identical.
void write_manifest(const fs::path& file, const std::string& command,
                    const std::vector<std::string>& args, json config,
                    std::uint64_t seed, const std::string& started) {
  json manifest;
  manifest["command"] = command;
  manifest["argv"] = args;
  manifest["config"] = std::move(config);
  manifest["master_seed"] = seed;
  manifest["version"] = kVersion;
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_timestamp();
  auto out = io::open_output(file);
  out << manifest.dump(2) << '\n';
}

std::vector<double> parse_csv_reals(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("malformed number: " + item);
  }
  return values;
}

struct Options {
  Index m = 2;
  Index n = 4096;
  Index replicas = 2000;
  Index count = 10000;
  Index grids = 500;
  Index samples = 1000;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
  std::string theta;
  double a = 0.5;
  double b = 0.5;
  double x = 0.5;
  bool dump = false;
  bool refine = false;
  bool fresh_seed = false;
};

json result_json(const MaximizerResult<double>& result) {
  return json{{"value", result.value},
              {"theta", std::vector<double>(result.theta.begin(), result.theta.end())},
              {"gaps", std::vector<double>(result.gaps.begin(), result.gaps.end())},
              {"knots", result.knots}};
}

int run_maximize(const Options& o, std::ostream& out) {
  RandomStream stream({o.seed, 0});
  const auto grid = simulate<double>(o.m, o.n, stream);
  json doc = result_json(maximize(grid));
  doc["m"] = o.m;
  doc["n"] = o.n;
  doc["seed"] = o.seed;
  if (o.dump) {
    json paths = json::array();
    for (Index i = 0; i < grid.paths(); ++i) {
      const Eigen::VectorXd row = grid.values().row(i).transpose();
      paths.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["paths"] = std::move(paths);
  }
  out << doc.dump() << '\n';
  return kSuccess;
}

int run_verify(const Options& o, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  const std::string started = utc_timestamp();
  CampaignConfig config{o.m, o.n, o.replicas, o.alpha, o.seed, o.workers};
  if (o.fresh_seed) {
    std::random_device device;
    config.master_seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    err << "fresh seed: " << config.master_seed << '\n';
  }
  config.validate_statistical();
  const fs::path dir = resolve_out(o.out);

  const auto primary = run_theta_campaign(config);
  CampaignConfig mirror_config = config;
  mirror_config.master_seed = derive_seed(config.master_seed, seed_tags::kMirrorCampaign);
  const auto mirror = run_theta_campaign(mirror_config);
  io::write_theta_sample_set(dir, primary);
  {
    auto file = io::open_output(dir / "mirror_thetas.csv");
    io::write_matrix_csv(file, "theta", mirror.thetas);
  }

  auto reports = theta_law_reports(primary, config.alpha);
  for (auto& r : test_time_reversal(primary, mirror, config.alpha)) reports.push_back(r);
  for (auto& r : pathwise_reversal_reports(check_pathwise_reversal(config, 1000))) {
    reports.push_back(r);
  }
  if (o.refine) {
    for (auto& r : refine_reports(config, reports)) reports.push_back(r);
  }
  io::write_reports_json(dir / "reports.json", reports);

  json cfg{{"m", config.m},           {"n_grid", config.n_grid},
           {"n_replicas", config.n_replicas}, {"alpha", config.alpha},
           {"workers", config.workers}, {"refine", o.refine}};
  write_manifest(dir / "manifest.json", "verify", args, cfg, config.master_seed, started);

  for (const auto& r : reports) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " statistic=" << r.statistic
        << " critical=" << r.critical_value << '\n';
  }
  return all_passed(reports) ? kSuccess : kTestFailure;
}

int run_gue(const Options& o, const std::vector<std::string>& args) {
  const std::string started = utc_timestamp();
  if (o.m < 1 || o.count < 1) throw std::invalid_argument("gue: m and count must be positive");
  const fs::path file = resolve_out(o.out);
  RandomStream stream({o.seed, 0});
  const auto lambdas = sample_lambda_max(o.m, o.count, stream);
  {
    auto csv = io::open_output(file);
    csv << "lambda_max\n";
    for (const double v : lambdas) csv << io::format_double(v) << '\n';
  }
  write_manifest(fs::path(file.string() + ".manifest.json"), "gue", args,
                 json{{"m", o.m}, {"count", o.count}}, o.seed, started);
  return kSuccess;
}

int run_empirical(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const std::string started = utc_timestamp();
  if (o.samples < 1) throw std::invalid_argument("empirical: samples must be positive");
  const fs::path dir = resolve_out(o.out);
  std::vector<Index> counts;
  for (Index c = 1; c < o.samples; c *= 10) counts.push_back(c);
  counts.push_back(o.samples);
  const auto study = run_empirical_study(o.m, o.n, o.grids, counts, o.seed, o.workers);
  {
    auto csv = io::open_output(dir / "empirical.csv");
    io::write_empirical_csv(csv, study);
  }
  const auto reports = empirical_reports(study);
  io::write_reports_json(dir / "reports.json", reports);
  write_manifest(dir / "manifest.json", "empirical", args,
                 json{{"m", o.m}, {"n_grid", o.n}, {"grids", o.grids}, {"samples", o.samples}},
                 o.seed, started);
  io::write_empirical_csv(out, study);
  return all_passed(reports) ? kSuccess : kTestFailure;
}

int run_joint(const Options& o, const std::vector<std::string>& args) {
  const std::string started = utc_timestamp();
  CampaignConfig config{o.m, o.n, o.replicas, o.alpha, o.seed, o.workers};
  const fs::path dir = resolve_out(o.out);
  const auto rows = run_joint_campaign(config);
  {
    auto csv = io::open_output(dir / "joint.csv");
    io::write_joint_csv(csv, rows);
  }
  write_manifest(dir / "manifest.json", "joint", args,
                 json{{"m", o.m}, {"n_grid", o.n}, {"n_replicas", o.replicas}}, o.seed,
                 started);
  return kSuccess;
}

int run_density(const Options& o, std::ostream& out) {
  const auto values = parse_csv_reals(o.theta);
  if (static_cast<Index>(values.size()) != o.m - 1) {
    throw std::invalid_argument("density: --theta must have m-1 entries");
  }
  const Eigen::Map<const Eigen::VectorXd> theta(values.data(),
                                                static_cast<Index>(values.size()));
  out << io::format_double(f_m_density(theta)) << '\n';
  return kSuccess;
}

int run_dump_paths(const Options& o, std::ostream& out) {
  RandomStream stream({o.seed, 0});
  const auto grid = simulate<double>(o.m, o.n, stream);
  if (o.out.empty()) {
    write_paths_csv(out, grid);
  } else {
    auto file = io::open_output(o.out);
    write_paths_csv(file, grid);
  }
  return kSuccess;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximizers of the Glynn-Whitt Brownian functional", "gwmax"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* maximize_cmd = app.add_subcommand("maximize", "D_m and its maximizers on one grid");
  maximize_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  maximize_cmd->add_option("--n", o.n, "grid steps")->required();
  maximize_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  maximize_cmd->add_flag("--dump", o.dump, "include the sampled paths");

  auto* verify_cmd = app.add_subcommand("verify", "goodness-of-fit campaign for the maximizer law");
  verify_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  verify_cmd->add_option("--n-grid", o.n, "grid steps per path")->capture_default_str();
  verify_cmd->add_option("--replicas", o.replicas, "independent grids")->capture_default_str();
  verify_cmd->add_option("--alpha", o.alpha, "significance level")->capture_default_str();
  verify_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  verify_cmd->add_option("--out", o.out, "output directory");
  verify_cmd->add_option("--workers", o.workers, "worker threads")->capture_default_str();
  verify_cmd->add_flag("--refine", o.refine, "re-check KS statistics at twice the grid size");
  verify_cmd->add_flag("--fresh-seed", o.fresh_seed, "draw a random master seed");

  auto* gue_cmd = app.add_subcommand("gue", "sample largest GUE eigenvalues");
  gue_cmd->add_option("--m", o.m, "matrix size")->required();
  gue_cmd->add_option("--count", o.count, "eigenvalues to sample")->required();
  gue_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  gue_cmd->add_option("--out", o.out, "output CSV file");

  auto* empirical_cmd = app.add_subcommand("empirical", "restricted maximum over Dirichlet point sets");
  empirical_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  empirical_cmd->add_option("--n-grid", o.n, "grid steps per path")->capture_default_str();
  empirical_cmd->add_option("--grids", o.grids, "independent grids")->capture_default_str();
  empirical_cmd->add_option("--samples", o.samples, "largest point-set count")
      ->capture_default_str();
  empirical_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  empirical_cmd->add_option("--out", o.out, "output directory");
  empirical_cmd->add_option("--workers", o.workers, "worker threads")->capture_default_str();

  auto* joint_cmd = app.add_subcommand("joint", "record maximizers, D_m and terminal values");
  joint_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  joint_cmd->add_option("--n-grid", o.n, "grid steps per path")->capture_default_str();
  joint_cmd->add_option("--replicas", o.replicas, "independent grids")->capture_default_str();
  joint_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  joint_cmd->add_option("--out", o.out, "output directory");
  joint_cmd->add_option("--workers", o.workers, "worker threads")->capture_default_str();

  auto* density_cmd = app.add_subcommand("density", "evaluate the maximizer density f_m");
  density_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  density_cmd->add_option("--theta", o.theta, "comma-separated theta_1..theta_{m-1}")->required();

  auto* beta_cmd = app.add_subcommand("beta-cdf", "regularized incomplete beta I_x(a, b)");
  beta_cmd->add_option("--a", o.a, "first shape")->required();
  beta_cmd->add_option("--b", o.b, "second shape")->required();
  beta_cmd->add_option("--x", o.x, "evaluation point")->required();

  auto* dump_cmd = app.add_subcommand("dump-paths", "write one simulated grid as CSV");
  dump_cmd->add_option("--m", o.m, "number of Brownian paths")->required();
  dump_cmd->add_option("--n", o.n, "grid steps")->required();
  dump_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  dump_cmd->add_option("--out", o.out, "output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*maximize_cmd) return run_maximize(o, out);
    if (*verify_cmd) return run_verify(o, args, out, err);
    if (*gue_cmd) return run_gue(o, args);
    if (*empirical_cmd) return run_empirical(o, args, out);
    if (*joint_cmd) return run_joint(o, args);
    if (*density_cmd) return run_density(o, out);
    if (*beta_cmd) {
      out << io::format_double(beta_cdf(BetaSpec(o.a, o.b), o.x)) << '\n';
      return kSuccess;
    }
    if (*dump_cmd) return run_dump_paths(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace gw::cli
