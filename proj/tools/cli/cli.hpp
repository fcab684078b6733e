#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specgap::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsageError = 2,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; files named by --out are written directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace specgap::cli
