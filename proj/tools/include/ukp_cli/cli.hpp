#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ukp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInput = 2,
  kTimeout = 3,
  kInternal = 4,
};

/// Runs the `ukp` command line (args excludes the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ukp::cli
