#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trunkkit::cli {

// Runs one subcommand.  Exit code 0 on success / consistent results, 1 when
// a violation or contradiction is found, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace trunkkit::cli
