#pragma once

#include <iosfwd>

namespace sbas::cli {

// Default seed for every random draw (attacker sampling, random tiebreaks).
inline constexpr unsigned long long kDefaultSeed = 20240601ULL;

// Environment variable consulted for the default worker count.
inline constexpr const char* kJobsEnv = "SBAS_JOBS";

// Entry point of the `sbaslab` command. Returns the process exit status; all
// output goes to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sbas::cli
