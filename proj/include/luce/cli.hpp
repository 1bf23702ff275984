#pragma once

#include <iosfwd>

namespace luce::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `luce` command line. Documents go to `out` (or --out), messages to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace luce::cli
