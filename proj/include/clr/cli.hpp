#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clr {

// Entry point of the command line tool. Diagnostics go to `err`; returns
// the process exit status. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace clr
