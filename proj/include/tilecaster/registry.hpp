#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tilecaster/env.hpp"
#include "tilecaster/map_dsl.hpp"

namespace tilecaster {

// Everything in an EnvSpec except its id and map.
struct EnvConfig {
  std::vector<Action> action_set{Action::Forward, Action::Backward, Action::TurnLeft, Action::TurnRight};
  GoalMode goal_mode = GoalMode::Static;
  RewardRules rewards;
  bool health_enabled = false;
  int medkit_count = 0;
  int max_steps = 500;
  int obs_width = 64;
  int obs_height = 64;
};

// The only fields make_env lets callers change.
struct EnvOverrides {
  std::optional<int> obs_width;
  std::optional<int> obs_height;
  std::optional<int> max_steps;
  std::optional<double> goal_reward;
  std::optional<double> living_reward;
  std::optional<double> health_decay;
  std::optional<double> health_restore;
};

class UnknownEnvError : public std::invalid_argument {
 public:
  UnknownEnvError(std::string_view id, const std::vector<std::string>& known);
};

struct ShippedMap {
  std::string_view id;
  std::string_view text;
};

// Map files under maps/, embedded at build time.
std::span<const ShippedMap> shipped_maps();

class EnvRegistry {
 public:
  EnvRegistry() = default;
  EnvRegistry(const EnvRegistry& other);
  EnvRegistry& operator=(const EnvRegistry&) = delete;

  // Registry holding every shipped environment. Each map must parse without
  // diagnostics and every goal must be reachable from every spawn once keys
  // are collected; otherwise throws std::logic_error.
  static EnvRegistry with_shipped_envs();

  // Returns the parse warnings. Throws MapParseError on parse errors,
  // std::invalid_argument on a duplicate id or an invalid config.
  std::vector<ParseDiagnostic> register_env(const std::string& id, const MapSource& source, const EnvConfig& config);

  EnvSpec make_env(std::string_view id, const EnvOverrides& overrides = {}) const;

  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, EnvSpec, std::less<>> specs_;
};

// Process-wide registry, seeded with the shipped environments.
EnvRegistry& default_registry();

EnvSpec make_env(std::string_view id, const EnvOverrides& overrides = {});
std::vector<ParseDiagnostic> register_env(const std::string& id, const MapSource& source, const EnvConfig& config);
std::vector<std::string> registered_env_ids();

// Checks that every goal candidate is reachable from every spawn candidate
// when keys are collected along the way; returns one message per failure.
std::vector<std::string> check_goal_reachability(const TileMap& map);

}  // namespace tilecaster
