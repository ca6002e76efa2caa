#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace gadgetforge {

// FNV-1a, 64-bit. Used as an identity hash for exported artifacts.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);

std::vector<std::string> split_ws(std::string_view line);

// Next line that is not blank; false at end of stream.
bool next_content_line(std::istream& in, std::string& line);

// Throws ValidationError naming `what` when the token is not a base-10 integer.
std::uint64_t parse_u64(std::string_view token, std::string_view what);

}  // namespace gadgetforge
