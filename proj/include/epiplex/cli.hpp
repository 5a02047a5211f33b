#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epiplex {

// Runs one CLI invocation. Exit codes: 0 success or a positive answer,
// 1 a negative answer, 2 usage or semantic errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace epiplex
