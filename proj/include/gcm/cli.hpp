#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitMath = 4;

/// Runs one `gcm` subcommand. `args` excludes the program name. The JSON
/// payload goes to `out` (or to the --output file), diagnostics to `err`.
/// Returns the process exit code; nothing is written to `out` on failure.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcm::cli
