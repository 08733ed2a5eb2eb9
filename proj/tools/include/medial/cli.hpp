#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace medial::cli {

/// Runs one subcommand; `args` excludes the program name.
/// Exit codes: 0 affirmative, 1 negative, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medial::cli
