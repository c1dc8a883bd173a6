#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace costsearch::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kSizeLimit = 3,
};

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace costsearch::cli
