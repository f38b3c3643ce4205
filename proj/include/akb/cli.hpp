#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace akb {

// Exit codes of the akb command.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,        // syntax error, unknown level, missing scenario
  kExitValidation = 2,   // ill-formed net or lattice
  kExitScript = 3,       // --script entry not enabled
  kExitDepth = 4,        // explore stopped at the depth bound
  kExitCounterexample = 5,
  kExitUsage = 64,       // bad command-line flags
};

// Entry point of the akb command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace akb
