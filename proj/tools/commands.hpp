#pragma once

#include <string>
#include <vector>

namespace cyclecent::cli {

/// Runs the command line and returns the process exit code: 0 success,
/// 2 usage error, 3 input format error, 4 numeric or degenerate input,
/// 1 anything unexpected. Messages go to stderr.
int run(const std::vector<std::string>& args);

}  // namespace cyclecent::cli
