#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwov::cli {

// Runs one command line (args excludes the program name). Returns the
// process exit status; diagnostics go to `err`, progress to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rwov::cli
