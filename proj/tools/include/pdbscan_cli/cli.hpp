#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pdbscan::cli {

/// Exit statuses shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `pdbscan` executable. `args` excludes the program
/// name. Normal output goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdbscan::cli
