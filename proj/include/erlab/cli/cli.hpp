#pragma once

#include <iosfwd>

namespace erlab::cli {

/// Exit codes of dispatch().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;   ///< bad arguments or a runtime error
inline constexpr int kExitFailed = 2;  ///< a verify suite ran and failed

/// Parses argv and runs one subcommand. Data goes to `out` (or the --out
/// file); diagnostics and the per-suite log line go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erlab::cli
