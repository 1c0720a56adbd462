#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fabba::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the `fabba` command line on `args` (program name excluded).
/// Exit codes: 0 success, 1 usage error, 2 data error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "0.1..0.9" (stepping by `step`) or a comma-separated list.
std::vector<double> parse_alpha_list(const std::string& text, double step);

}  // namespace fabba::cli
