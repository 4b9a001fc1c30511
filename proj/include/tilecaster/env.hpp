#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tilecaster/geometry.hpp"
#include "tilecaster/renderer.hpp"
#include "tilecaster/rng.hpp"

namespace tilecaster {

enum class Action : std::uint8_t { Forward, Backward, TurnLeft, TurnRight, StrafeLeft, StrafeRight, NoOp };
inline constexpr int kActionCount = 7;

std::string_view action_name(Action a);
// Accepts "forward", "turn_left", "TurnLeft", "turn-left", ...
std::optional<Action> parse_action(std::string_view name);

enum class GoalMode : std::uint8_t { Static, RandomPerEpisode };

struct RewardRules {
  double goal_reward = 1.0;
  double living_reward = 0.0;   // health-gathering only
  double health_decay = 0.0;    // per step
  double health_restore = 0.0;  // per medkit
  friend bool operator==(const RewardRules&, const RewardRules&) = default;
};

inline constexpr double kMoveSpeed = 0.15;
inline constexpr int kHeadingSteps = 24;  // 15 degrees per turn
inline constexpr std::size_t kMaxMedkits = 16;
inline constexpr double kMaxHealth = 100.0;

// Unit direction for heading index h in [0, kHeadingSteps); index 0 faces
// east and indices grow clockwise on screen (towards +y, south).
Vec2 heading_direction(int heading);

struct EnvSpec {
  std::string id;
  TileMap map;
  std::vector<Action> action_set;
  GoalMode goal_mode = GoalMode::Static;
  RewardRules rewards;
  bool health_enabled = false;
  int medkit_count = 0;
  int max_steps = 500;
  int obs_width = 64;
  int obs_height = 64;
  // Interior floor tiles, row-major; medkits are placed on these.
  std::vector<TileCoord> free_tiles;

  // NoOp is legal in every environment on top of action_set.
  bool allows(Action a) const;
  std::string action_set_description() const;
};

// Fills EnvSpec::free_tiles from the map.
void index_free_tiles(EnvSpec& spec);

struct EnvState {
  Pose pose;
  int heading = 0;
  std::uint8_t inventory = 0;  // bit per KeyColor
  DoorFlags door_open;
  EntityFlags entity_alive;
  int active_goal = -1;  // index into map.goal_candidates(), -1 when none
  double health = kMaxHealth;
  int t = 0;
  RngState rng;
  bool done = false;
  std::array<TileCoord, kMaxMedkits> medkits{};
  std::uint8_t medkit_count = 0;

  bool has_key(KeyColor c) const { return (inventory >> static_cast<unsigned>(c)) & 1u; }
  friend bool operator==(const EnvState&, const EnvState&) = default;
};

enum class Event : std::uint32_t {
  PickedKeyRed = 1u << 0,
  PickedKeyBlue = 1u << 1,
  PickedKeyYellow = 1u << 2,
  OpenedDoor = 1u << 3,
  ReachedGoal = 1u << 4,
  PickedMedkit = 1u << 5,
  Died = 1u << 6,
  Truncated = 1u << 7,
};

struct StepInfo {
  std::uint32_t events = 0;

  bool has(Event e) const { return (events & static_cast<std::uint32_t>(e)) != 0; }
  void add(Event e) { events |= static_cast<std::uint32_t>(e); }
  bool truncated() const { return has(Event::Truncated); }
  // "picked_key_red", "reached_goal", "truncated", ...
  std::vector<std::string> tags() const;
  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct Transition {
  EnvState state;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

struct StepResult {
  EnvState state;
  Frame observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Sprites for the live entities of `state`. Reuses `out`'s storage.
void collect_sprites(const EnvSpec& spec, const EnvState& state, std::vector<Sprite>& out);

void render_state_into(std::span<std::uint8_t> out, const EnvSpec& spec, const EnvState& state);
Frame render_state(const EnvSpec& spec, const EnvState& state);

// Reset without rendering; the draws consumed from `rng` are reflected in
// the returned state's rng.
EnvState reset_state(const EnvSpec& spec, RngState rng);
std::pair<EnvState, Frame> reset(const EnvSpec& spec, RngState rng);

// Transition without rendering. Throws ContractViolation when state.done,
// std::invalid_argument for an action outside the spec's action set.
Transition step_state(const EnvSpec& spec, const EnvState& state, Action action);
StepResult step(const EnvSpec& spec, const EnvState& state, Action action);

}  // namespace tilecaster
