#pragma once

#include <string>
#include <vector>

namespace graphsal {

// Entry point behind the graphsal binary; takes the argument list without
// the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

} // namespace graphsal
