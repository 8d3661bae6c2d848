#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace multicheb {

enum ExitCode : int { kExitOk = 0, kExitSuboptimal = 1, kExitInput = 2, kExitNumeric = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multicheb
