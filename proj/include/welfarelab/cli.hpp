#pragma once

#include <ostream>

namespace welfarelab {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitViolation = 4;

// Entry point of `welfarelab`; writes results to `out` (or --output) and
// diagnostics to `err`, and returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace welfarelab
