#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stardecomp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Output goes to
/// `out` unless -o names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stardecomp::cli
