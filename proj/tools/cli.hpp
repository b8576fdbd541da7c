#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tightcycle {

/// Runs one command line (program name excluded). Returns the exit code:
/// 0 success, 1 no cycle / invalid witness, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tightcycle
