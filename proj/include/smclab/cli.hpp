#pragma once

#include <iosfwd>

namespace smclab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitWarnings = 1;  ///< only under --strict
inline constexpr int kExitUsage = 2;     ///< bad flags or unusable data

/// Entry point of the `smclab` command line. Writes progress to `out`,
/// diagnostics to `err`, result files to the output directory.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smclab
