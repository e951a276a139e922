#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mapfp::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
  kDefect = 4,
};

// Runs one command line (without the program name). Documents go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mapfp::cli
