#pragma once

#include <iosfwd>

namespace deflog::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNoExtension = 3;
inline constexpr int kSemiMonoViolated = 4;
inline constexpr int kCorpusFailure = 5;

/// Runs the command line; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace deflog::cli
