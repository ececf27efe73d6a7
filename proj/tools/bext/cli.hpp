#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bext::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Runs the tool with argv[1..]; output goes to `out` unless --output is
/// given, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bext::cli
