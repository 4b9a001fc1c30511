#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilecaster/env.hpp"

namespace tilecaster::testing {

struct Rollout {
  std::vector<Action> actions;
  double total_reward = 0;
  bool done = false;
  bool reached_goal = false;
  EnvState final_state;
};

// Closed-loop route follower: takes the shortest keyed tile path from the
// spawn to the active goal, turns to the axis heading of each hop and walks
// forward until the next tile center is within half a move.
Rollout plan_route(const EnvSpec& spec, RngState reset_rng);

// Replays `actions` from reset(spec, reset_rng) until done or exhausted.
Rollout replay(const EnvSpec& spec, RngState reset_rng, const std::vector<Action>& actions);

std::vector<Action> read_actions(const std::string& path);
void write_actions(const std::string& path, const std::vector<Action>& actions);

}  // namespace tilecaster::testing
