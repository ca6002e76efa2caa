#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gadgetforge::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 verification failure or runtime error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gadgetforge::cli
