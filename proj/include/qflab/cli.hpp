#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qflab::cli {

// Runs one command invocation (argv without the program name).
// Exit codes: 0 determinate success, 1 usage/parse errors, 2 honest Unknown.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qflab::cli
