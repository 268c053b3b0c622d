#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace socassoc {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitRuntime = 2,
  kExitCheckFailed = 3,  ///< validate mismatch or unstable audit
};

/// Entry point of the `socassoc` tool. `args` excludes the program name.
/// Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socassoc
