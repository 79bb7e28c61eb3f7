#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symq {

// Runs one CLI invocation (args exclude the program name) and writes the
// report to `out` (or the --out file). Exit codes: 0 ok, 1 domain error,
// 2 usage error. Re-entrant; the experiment runner and tests call it
// in-process.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace symq
