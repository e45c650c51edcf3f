#pragma once

// Command-line front end. run() parses argv, dispatches one subcommand and
// writes its machine-readable output to `out`; diagnostics go to `err`.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <ostream>

namespace bp::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bp::cli
