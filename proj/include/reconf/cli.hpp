#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace reconf {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,         // usage or parse error
  kExitPrecondition = 2,  // valid input outside an operation's domain
  kExitInternal = 3,      // a result failed validation
};

// Runs the tool on `args` (program name excluded), writing results to `out`
// and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reconf
