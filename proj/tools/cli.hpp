#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p3p::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;

/// Runs the command line `args` (program name excluded). Reports go to `out`
/// unless --out is given; diagnostics go to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p3p::cli
