#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace argdial {

// Runs the command-line interface on the given arguments (program name
// excluded). Writes results to out and problems to err. Returns 0 on
// success, 1 on domain errors, and 2 on usage errors.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace argdial
