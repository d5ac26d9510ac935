#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace piltz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;       // runtime error: coverage, I/O, tolerance
inline constexpr int kExitUsage = 2;         // bad flags, unknown subcommand, domain errors
inline constexpr int kExitVerification = 3;  // a result failed its own re-check

/// Default cache directory when --cache-dir is absent.
inline constexpr const char* kCacheEnv = "PILTZ_CACHE_DIR";

/// Runs one subcommand. Artifacts go to --out or to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace piltz::cli
