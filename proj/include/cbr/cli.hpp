#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kPropertyViolated = 3,
};

/// Runs the `cbr-search` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbr::cli
