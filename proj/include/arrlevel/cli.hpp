#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arrlevel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMalformed = 2;

/// Runs one command; `args` excludes the program name. Returns the exit code:
/// 0 on success, 1 when a check or comparison fails, 2 on malformed input or
/// bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrlevel::cli
