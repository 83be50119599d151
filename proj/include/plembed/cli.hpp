#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plembed::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kVerdictFalse = 1;  // computed, and the answer is "infeasible"
inline constexpr int kInputError = 2;    // could not compute: bad file, parse or domain error
inline constexpr int kUsage = 64;        // bad command line

/// Environment variable consulted for the default Monte Carlo seed.
inline constexpr const char* kSeedEnv = "PLEMBED_SEED";

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plembed::cli
