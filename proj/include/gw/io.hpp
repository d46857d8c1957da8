#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gw/experiments.hpp"
#include "gw/stats.hpp"

namespace gw::io {

/// Round-trip exact decimal form (17 significant digits).
std::string format_double(double value);

/// Header `replica,<stem>_1,...,<stem>_K`, one row per matrix row.
void write_matrix_csv(std::ostream& out, const std::string& stem,
                      const Eigen::Ref<const Eigen::MatrixXd>& rows);

void write_theta_sample_set(const std::filesystem::path& directory,
                            const ThetaSampleSet& set);

void write_empirical_csv(std::ostream& out, const EmpiricalStudy& study);
void write_joint_csv(std::ostream& out, const std::vector<JointObservables>& rows);

/// {"all_passed": bool, "reports": [...]} with one object per report.
void write_reports_json(const std::filesystem::path& file,
                        const std::vector<TestReport>& reports);

/// Opens `file` for writing, creating parent directories; throws on failure.
std::ofstream open_output(const std::filesystem::path& file);

}  // namespace gw::io
