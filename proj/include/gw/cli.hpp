#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gw::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 a statistical check failed, 2 usage or
/// validation error.
enum ExitCode : int { kSuccess = 0, kTestFailure = 1, kUsageError = 2 };

/// Parses and runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv);

}  // namespace gw::cli
