#pragma once

#include <iosfwd>

namespace collatz::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
};

/// Default size limit for the matrix engine; COLLATZ_MATRIX_DIM_CAP overrides it.
inline constexpr unsigned long kDefaultMatrixDimCap = 4096;

/// Parses argv and runs one subcommand. Never throws; errors map to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace collatz::cli
