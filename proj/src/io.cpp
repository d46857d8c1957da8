#include "gw/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "gw/brownian.hpp"

namespace gw {

void write_paths_csv(std::ostream& out, const BrownianGrid<double>& grid) {
  out << 't';
  for (Index i = 1; i <= grid.paths(); ++i) out << ",B" << i;
  out << '\n';
  for (Index k = 0; k <= grid.steps(); ++k) {
    out << io::format_double(grid.time(k));
    for (Index i = 0; i < grid.paths(); ++i) out << ',' << io::format_double(grid(i, k));
    out << '\n';
  }
}

namespace io {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_matrix_csv(std::ostream& out, const std::string& stem,
                      const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  out << "replica";
  for (Eigen::Index c = 1; c <= rows.cols(); ++c) out << ',' << stem << '_' << c;
  out << '\n';
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    out << r;
    for (Eigen::Index c = 0; c < rows.cols(); ++c) out << ',' << format_double(rows(r, c));
    out << '\n';
  }
}

std::ofstream open_output(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  return out;
}

void write_theta_sample_set(const std::filesystem::path& directory,
                            const ThetaSampleSet& set) {
  {
    auto out = open_output(directory / "thetas.csv");
    write_matrix_csv(out, "theta", set.thetas);
  }
  {
    auto out = open_output(directory / "gaps.csv");
    write_matrix_csv(out, "gap", set.gaps);
  }
  auto out = open_output(directory / "d_values.csv");
  out << "replica,d_value\n";
  for (Eigen::Index r = 0; r < set.d_values.size(); ++r) {
    out << r << ',' << format_double(set.d_values(r)) << '\n';
  }
}

void write_empirical_csv(std::ostream& out, const EmpiricalStudy& study) {
  out << "sample_count,mean_gap,se_gap,mean_d_n_m,mean_d_m\n";
  const double mean_d = study.d_m.mean();
  for (std::size_t c = 0; c < study.sample_counts.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    out << study.sample_counts[c] << ',' << format_double(study.mean_gap(col)) << ','
        << format_double(study.se_gap(col)) << ','
        << format_double(study.d_n_m.col(col).mean()) << ',' << format_double(mean_d)
        << '\n';
  }
}

void write_joint_csv(std::ostream& out, const std::vector<JointObservables>& rows) {
  if (rows.empty()) return;
  const auto inner = rows.front().theta.size();
  const auto paths = rows.front().terminal_values.size();
  out << "replica";
  for (Eigen::Index i = 1; i <= inner; ++i) out << ",theta_" << i;
  out << ",d_value";
  for (Eigen::Index i = 1; i <= paths; ++i) out << ",terminal_" << i;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << r;
    for (Eigen::Index i = 0; i < inner; ++i) out << ',' << format_double(rows[r].theta(i));
    out << ',' << format_double(rows[r].d_value);
    for (Eigen::Index i = 0; i < paths; ++i) {
      out << ',' << format_double(rows[r].terminal_values(i));
    }
    out << '\n';
  }
}

void write_reports_json(const std::filesystem::path& file,
                        const std::vector<TestReport>& reports) {
  nlohmann::json doc;
  doc["all_passed"] = all_passed(reports);
  doc["reports"] = reports;
  auto out = open_output(file);
  out << doc.dump(2) << '\n';
}

}  // namespace io
}  // namespace gw
