#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace effdiag::cli {

// Runs one command line (without the program name). Exit codes: 0 success,
// 1 domain error or a negative answer, 2 usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace effdiag::cli
