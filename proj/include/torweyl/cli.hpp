#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torweyl {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs the command line (arguments without the program name) against the
// given streams.  Returns the process exit code: 0 on success, 1 on input or
// validation errors, 2 on internal consistency failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torweyl
