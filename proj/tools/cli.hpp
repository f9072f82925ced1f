#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace souvlaki::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;
inline constexpr int kSolver = 4;

/// Runs one command line (args excludes the program name). Artifacts go to --out when given,
/// otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace souvlaki::cli
