#pragma once

// Command-line front end. `run` is the whole program minus process exit, so
// tests can drive it with argument vectors and captured streams.

#include <ostream>
#include <string>
#include <vector>

namespace lfdkit::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kInconclusive = 3,
  kIo = 4,
};

/// args[0] is the program name. Results go to `out` unless --output is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfdkit::cli
