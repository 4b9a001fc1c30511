#include "tilecaster/registry.hpp"

#include <algorithm>

namespace tilecaster {

namespace {

EnvConfig navigation(int max_steps, GoalMode mode = GoalMode::Static) {
  EnvConfig c;
  c.goal_mode = mode;
  c.max_steps = max_steps;
  return c;
}

EnvConfig health_gathering() {
  EnvConfig c;
  c.action_set = {Action::Forward, Action::Backward, Action::TurnLeft,
                  Action::TurnRight, Action::StrafeLeft, Action::StrafeRight};
  c.rewards = {.goal_reward = 0.0, .living_reward = 0.01, .health_decay = 0.5, .health_restore = 25.0};
  c.health_enabled = true;
  c.medkit_count = 8;
  c.max_steps = 2100;
  return c;
}

std::optional<EnvConfig> shipped_config(std::string_view id) {
  if (id == "simple" || id == "key-door" || id == "key-corridor") return navigation(500);
  if (id == "my-way-home") return navigation(2100);
  if (id == "health-gathering") return health_gathering();
  const std::pair<std::string_view, int> sizes[] = {{"01", 1350}, {"02", 2700}, {"03", 4050}};
  for (const auto& [suffix, steps] : sizes) {
    if (id == "dmlab-static-" + std::string(suffix)) return navigation(steps);
    if (id == "dmlab-random-goal-" + std::string(suffix)) return navigation(steps, GoalMode::RandomPerEpisode);
  }
  return std::nullopt;
}

void validate_obs_size(int width, int height, const char* wfield, const char* hfield) {
  if (width < 8) throw std::invalid_argument(std::string(wfield) + " must be >= 8, got " + std::to_string(width));
  if (height < 8) throw std::invalid_argument(std::string(hfield) + " must be >= 8, got " + std::to_string(height));
}

void validate_config(const EnvConfig& c) {
  validate_obs_size(c.obs_width, c.obs_height, "obs_width", "obs_height");
  if (c.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (c.action_set.empty()) throw std::invalid_argument("action_set must not be empty");
  if (c.medkit_count < 0 || c.medkit_count > static_cast<int>(kMaxMedkits)) {
    throw std::invalid_argument("medkit_count must lie in [0, " + std::to_string(kMaxMedkits) + "]");
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

UnknownEnvError::UnknownEnvError(std::string_view id, const std::vector<std::string>& known)
    : std::invalid_argument("unknown environment id '" + std::string(id) + "'; registered ids: " + join(known)) {}

EnvRegistry::EnvRegistry(const EnvRegistry& other) {
  std::shared_lock lock(other.mutex_);
  specs_ = other.specs_;
}

std::vector<std::string> check_goal_reachability(const TileMap& map) {
  std::vector<std::string> failures;
  for (TileCoord s : map.spawn_candidates()) {
    for (TileCoord g : map.goal_candidates()) {
      if (!tile_reachable(map, s, g, DoorPolicy::Keyed)) {
        failures.push_back("goal (" + std::to_string(g.x) + "," + std::to_string(g.y) + ") unreachable from spawn (" +
                           std::to_string(s.x) + "," + std::to_string(s.y) + ")");
      }
    }
  }
  return failures;
}

EnvRegistry EnvRegistry::with_shipped_envs() {
  EnvRegistry reg;
  for (const ShippedMap& m : shipped_maps()) {
    const auto config = shipped_config(m.id);
    if (!config) throw std::logic_error("shipped map '" + std::string(m.id) + "' has no environment config");
    const std::string id(m.id);
    const auto warnings = reg.register_env(id, MapSource{std::string(m.text), id + ".map"}, *config);
    if (!warnings.empty()) {
      throw std::logic_error("shipped map " + format_diagnostic(warnings.front(), id + ".map"));
    }
    const auto unreachable = check_goal_reachability(reg.specs_.at(id).map);
    if (!unreachable.empty()) {
      throw std::logic_error("shipped map '" + id + "': " + unreachable.front());
    }
  }
  return reg;
}

std::vector<ParseDiagnostic> EnvRegistry::register_env(const std::string& id, const MapSource& source,
                                                       const EnvConfig& config) {
  if (id.empty()) throw std::invalid_argument("environment id must not be empty");
  validate_config(config);
  ParseResult parsed = parse_map(source);
  if (!parsed.ok()) throw MapParseError(source.name.empty() ? id : source.name, std::move(parsed.diagnostics));

  const auto goals = parsed.map->goal_candidates();
  if (config.goal_mode == GoalMode::RandomPerEpisode && goals.size() < 2) {
    throw std::invalid_argument("goal_mode RandomPerEpisode needs at least 2 goal candidates; map '" + id +
                                "' has " + std::to_string(goals.size()));
  }
  if (config.goal_mode == GoalMode::Static && goals.size() > 1) {
    // Position of the second 'G' in the source text.
    int line = 1;
    int col = 0;
    int seen = 0;
    for (char c : source.text) {
      if (c == '\n') {
        ++line;
        col = 0;
        continue;
      }
      ++col;
      if (c == 'G' && ++seen == 2) break;
    }
    parsed.diagnostics.push_back(
        {line, col, std::to_string(goals.size()) + " goal candidates in a static-goal environment; the first is active",
         Severity::Warning});
  }

  EnvSpec spec{.id = id,
               .map = std::move(*parsed.map),
               .action_set = config.action_set,
               .goal_mode = config.goal_mode,
               .rewards = config.rewards,
               .health_enabled = config.health_enabled,
               .medkit_count = config.medkit_count,
               .max_steps = config.max_steps,
               .obs_width = config.obs_width,
               .obs_height = config.obs_height,
               .free_tiles = {}};
  index_free_tiles(spec);

  std::unique_lock lock(mutex_);
  if (specs_.contains(id)) throw std::invalid_argument("environment id '" + id + "' is already registered");
  specs_.emplace(id, std::move(spec));
  return std::move(parsed.diagnostics);
}

EnvSpec EnvRegistry::make_env(std::string_view id, const EnvOverrides& overrides) const {
  EnvSpec spec = [&] {
    std::shared_lock lock(mutex_);
    const auto it = specs_.find(id);
    if (it == specs_.end()) {
      std::vector<std::string> known;
      for (const auto& [k, v] : specs_) known.push_back(k);
      throw UnknownEnvError(id, known);
    }
    return it->second;
  }();
  if (overrides.obs_width) spec.obs_width = *overrides.obs_width;
  if (overrides.obs_height) spec.obs_height = *overrides.obs_height;
  validate_obs_size(spec.obs_width, spec.obs_height, "obs_width", "obs_height");
  if (overrides.max_steps) {
    if (*overrides.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    spec.max_steps = *overrides.max_steps;
  }
  auto set_finite = [](double& field, const std::optional<double>& v, const char* name) {
    if (!v) return;
    if (!std::isfinite(*v)) throw std::invalid_argument(std::string(name) + " must be finite");
    field = *v;
  };
  set_finite(spec.rewards.goal_reward, overrides.goal_reward, "goal_reward");
  set_finite(spec.rewards.living_reward, overrides.living_reward, "living_reward");
  set_finite(spec.rewards.health_decay, overrides.health_decay, "health_decay");
  set_finite(spec.rewards.health_restore, overrides.health_restore, "health_restore");
  return spec;
}

bool EnvRegistry::contains(std::string_view id) const {
  std::shared_lock lock(mutex_);
  return specs_.find(id) != specs_.end();
}

std::vector<std::string> EnvRegistry::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [k, v] : specs_) out.push_back(k);
  return out;
}

EnvRegistry& default_registry() {
  static EnvRegistry registry = EnvRegistry::with_shipped_envs();
  return registry;
}

EnvSpec make_env(std::string_view id, const EnvOverrides& overrides) {
  return default_registry().make_env(id, overrides);
}

std::vector<ParseDiagnostic> register_env(const std::string& id, const MapSource& source, const EnvConfig& config) {
  return default_registry().register_env(id, source, config);
}

std::vector<std::string> registered_env_ids() { return default_registry().ids(); }

}  // namespace tilecaster
