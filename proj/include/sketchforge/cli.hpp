#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sketchforge {

/// Runs the command line; `args` excludes the program name. Returns 0 for
/// success or a true verdict, 1 for a false verdict, 2 for usage and parse
/// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchforge
