#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace spherecx {

/// Runs one command line (without the program name). Returns the process
/// exit status: 0 when every check passes, 1 when a check fails, 2 on a
/// usage error or malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace spherecx
