#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ternexp::cli {

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`. Returns 0 on pass or empty result, 1 when a
// counterexample or violation was found, 2 on usage or precondition errors.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace ternexp::cli
