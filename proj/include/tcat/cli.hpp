#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcat {

// Exit status: 0 every check passed, 1 a check failed, 2 bad input or budget exceeded.
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcat
