#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relframe::cli {

// Environment variable consulted for the default Monte Carlo seed.
inline constexpr const char* kSeedEnv = "RELFRAME_SEED";

// Exit codes: 0 success, 1 numerical-domain failure, 2 usage error.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relframe::cli
