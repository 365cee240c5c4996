#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sba::cli {

// Runs one command line (without the program name). Exit status: 0 on success, 1 on
// domain errors, 2 on parse and usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sba::cli
