#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace langvol::cli {

// Runs one invocation. Data goes to `out`, diagnostics to `err`; the return
// value is the process exit code (0 ok, 1 usage, 2 data, 3 network).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace langvol::cli
