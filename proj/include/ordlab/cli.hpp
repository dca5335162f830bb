#pragma once

#include <string>
#include <vector>

namespace ordlab::cli {

struct Result {
  /// 0 success, 1 domain failure (reported as JSON), 2 usage error.
  int exit_code = 0;
  std::string output;
};

/// Runs one command line. `args` excludes the program name.
Result run(const std::vector<std::string>& args);

}  // namespace ordlab::cli
