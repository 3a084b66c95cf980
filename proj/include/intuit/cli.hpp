// Command-line front end. Exit codes: 0 success, 1 negative but valid
// result, 2 input error, 3 internal invariant breach.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace intuit::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;
inline constexpr int kBreach = 3;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intuit::cli
