#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tilecaster::cli {

inline constexpr int kBenchSchemaVersion = 1;
inline constexpr int kEpisodeSchemaVersion = 1;

// Runs the `tilecaster` command line. args excludes the program name.
// Exit codes: 0 ok, 1 runtime/validation failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tilecaster::cli
