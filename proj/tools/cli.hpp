#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirred::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kStructuralError = 2,
  kResourceError = 3,
};

// Runs one command. `args` excludes the program name, e.g.
// {"prereverse", "--net", "collider.json", "--order", "X3,X1,X2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirred::cli
