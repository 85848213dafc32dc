#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tlcs::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kResource = 3,
};

/// Runs the command line `args` (without the program name). `in` backs the
/// `-` input path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace tlcs::cli
