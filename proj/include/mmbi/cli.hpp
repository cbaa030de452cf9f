#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmbi::cli {

/// Runs the command line `args` (args[0] is the program name). Structured output
/// goes to `out`; diagnostics go to `err` as a single "error: <kind>: <message>"
/// line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmbi::cli
