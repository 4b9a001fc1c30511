#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilecaster/geometry.hpp"
#include "tilecaster/rng.hpp"

namespace tilecaster::testing {

// Every symbol of the map format, placed at (2,1) of "#####\n#S?.#\n#####",
// must produce exactly this cell and entity.
struct SymbolCase {
  char symbol;
  Cell cell;
  std::optional<EntityInit> entity;
  bool goal_candidate = false;
};

std::vector<SymbolCase> symbol_cases();

// Empty when the symbol parses as expected and round-trips; otherwise a
// description of the first mismatch.
std::string check_symbol_case(const SymbolCase& c);

// One randomized trial each. The mirror trial returns the number of pixels
// that differ from the column-flipped frame of the mirrored world; the
// rotation trial the number that differ after a quarter turn of the agent in
// a map invariant under that turn.
int mirror_trial(RngState& rng);
int rotation_trial(RngState& rng);

}  // namespace tilecaster::testing
