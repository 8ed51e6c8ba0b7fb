#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace akepler::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kToleranceBreach = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kRuntimeError = 3;

// Runs one invocation; args excludes the program name. Summaries go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace akepler::cli
