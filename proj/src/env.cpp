#include "tilecaster/env.hpp"

#include <algorithm>
#include <cctype>

namespace tilecaster {

namespace {

constexpr std::array<std::string_view, kActionCount> kActionNames{
    "forward", "backward", "turn_left", "turn_right", "strafe_left", "strafe_right", "noop"};

// cos(k * 15deg), k = 0..6. Quadrant symmetry builds the rest, so the
// cardinal headings are exact.
constexpr std::array<double, 7> kCos15{1.0, 0.9659258262890683, 0.8660254037844386, 0.7071067811865476,
                                       0.5, 0.25881904510252074, 0.0};

constexpr std::uint32_t key_event(KeyColor c) { return 1u << static_cast<unsigned>(c); }

std::string normalize_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

void set_heading(EnvState& s, int heading) {
  s.heading = heading;
  s.pose.direction = heading_direction(heading);
  s.pose.camera_plane = camera_plane_for(s.pose.direction);
}

bool disc_overlaps_tile(const Vec2& c, double r, int tx, int ty) {
  const double qx = std::clamp(c.x(), static_cast<double>(tx), static_cast<double>(tx + 1));
  const double qy = std::clamp(c.y(), static_cast<double>(ty), static_cast<double>(ty + 1));
  const double dx = c.x() - qx;
  const double dy = c.y() - qy;
  return dx * dx + dy * dy < r * r;
}

// Opens every closed door the disc at `center` touches, when it is unlocked
// or its key is held.
void open_touched_doors(const EnvSpec& spec, EnvState& s, const Vec2& center, StepInfo& info) {
  const TileMap& map = spec.map;
  const int x0 = static_cast<int>(std::floor(center.x() - kAgentRadius));
  const int x1 = static_cast<int>(std::floor(center.x() + kAgentRadius));
  const int y0 = static_cast<int>(std::floor(center.y() - kAgentRadius));
  const int y1 = static_cast<int>(std::floor(center.y() + kAgentRadius));
  for (int ty = y0; ty <= y1; ++ty) {
    for (int tx = x0; tx <= x1; ++tx) {
      if (!map.in_bounds(tx, ty)) continue;
      const Cell& c = map(tx, ty);
      if (c.type != CellType::Door || s.door_open.test(c.door)) continue;
      if (c.locked && !s.has_key(c.key_color())) continue;
      if (!disc_overlaps_tile(center, kAgentRadius, tx, ty)) continue;
      s.door_open.set(c.door);
      info.add(Event::OpenedDoor);
    }
  }
}

// Slides along walls: each axis of the displacement is tried on its own.
void move_agent(const EnvSpec& spec, EnvState& s, const Vec2& delta, StepInfo& info) {
  Vec2 pos = s.pose.position;
  if (delta.x() != 0.0) {
    const Vec2 cand(pos.x() + delta.x(), pos.y());
    open_touched_doors(spec, s, cand, info);
    if (!circle_blocked(spec.map, cand, kAgentRadius, s.door_open)) pos = cand;
  }
  if (delta.y() != 0.0) {
    const Vec2 cand(pos.x(), pos.y() + delta.y());
    open_touched_doors(spec, s, cand, info);
    if (!circle_blocked(spec.map, cand, kAgentRadius, s.door_open)) pos = cand;
  }
  s.pose.position = pos;
}

// Uniform free tile that is neither `avoid` nor occupied by another medkit.
TileCoord sample_medkit_tile(const EnvSpec& spec, const EnvState& s, RngState& rng, TileCoord avoid) {
  const auto& tiles = spec.free_tiles;
  for (;;) {
    const TileCoord t = tiles[uniform_index(rng, tiles.size())];
    if (t == avoid) continue;
    const auto begin = s.medkits.begin();
    const auto end = begin + s.medkit_count;
    if (std::find(begin, end, t) != end) continue;
    return t;
  }
}

}  // namespace

std::string_view action_name(Action a) { return kActionNames[static_cast<std::size_t>(a)]; }

std::optional<Action> parse_action(std::string_view name) {
  const std::string n = normalize_name(name);
  for (std::size_t i = 0; i < kActionNames.size(); ++i) {
    if (n == normalize_name(kActionNames[i])) return static_cast<Action>(i);
  }
  return std::nullopt;
}

Vec2 heading_direction(int heading) {
  const int h = ((heading % kHeadingSteps) + kHeadingSteps) % kHeadingSteps;
  const int r = h % 6;
  double x = kCos15[static_cast<std::size_t>(r)];
  double y = kCos15[static_cast<std::size_t>(6 - r)];
  for (int q = 0; q < h / 6; ++q) {
    const double nx = -y;
    y = x;
    x = nx;
  }
  return {x, y};
}

bool EnvSpec::allows(Action a) const {
  return a == Action::NoOp || std::find(action_set.begin(), action_set.end(), a) != action_set.end();
}

std::string EnvSpec::action_set_description() const {
  std::string out = "{";
  for (Action a : action_set) {
    if (out.size() > 1) out += ", ";
    out += action_name(a);
  }
  if (out.size() > 1) out += ", ";
  out += "noop}";
  return out;
}

void index_free_tiles(EnvSpec& spec) {
  spec.free_tiles.clear();
  for (int ty = 1; ty + 1 < spec.map.height(); ++ty) {
    for (int tx = 1; tx + 1 < spec.map.width(); ++tx) {
      if (spec.map(tx, ty).type == CellType::Floor) spec.free_tiles.push_back({tx, ty});
    }
  }
}

std::vector<std::string> StepInfo::tags() const {
  static constexpr std::array<std::pair<Event, std::string_view>, 8> kNames{{
      {Event::PickedKeyRed, "picked_key_red"},
      {Event::PickedKeyBlue, "picked_key_blue"},
      {Event::PickedKeyYellow, "picked_key_yellow"},
      {Event::OpenedDoor, "opened_door"},
      {Event::ReachedGoal, "reached_goal"},
      {Event::PickedMedkit, "picked_medkit"},
      {Event::Died, "died"},
      {Event::Truncated, "truncated"},
  }};
  std::vector<std::string> out;
  for (const auto& [e, name] : kNames) {
    if (has(e)) out.emplace_back(name);
  }
  return out;
}

void collect_sprites(const EnvSpec& spec, const EnvState& state, std::vector<Sprite>& out) {
  out.clear();
  const auto entities = spec.map.entities();
  const TileCoord* goal = state.active_goal >= 0
                              ? &spec.map.goal_candidates()[static_cast<std::size_t>(state.active_goal)]
                              : nullptr;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (!state.entity_alive.test(i)) continue;
    const EntityInit& e = entities[i];
    switch (e.kind) {
      case EntityKind::Key:
        out.push_back({tile_center<double>(e.tile), SpriteKind::Key, e.color, true});
        break;
      case EntityKind::Goal:
        out.push_back({tile_center<double>(e.tile), SpriteKind::Goal, e.color, goal != nullptr && *goal == e.tile});
        break;
      case EntityKind::Medkit:
        out.push_back({tile_center<double>(e.tile), SpriteKind::Medkit, e.color, true});
        break;
    }
  }
  for (std::size_t m = 0; m < state.medkit_count; ++m) {
    out.push_back({tile_center<double>(state.medkits[m]), SpriteKind::Medkit, KeyColor::Red, true});
  }
}

void render_state_into(std::span<std::uint8_t> out, const EnvSpec& spec, const EnvState& state) {
  thread_local std::vector<Sprite> sprites;
  collect_sprites(spec, state, sprites);
  render_into(out, spec.map, WorldView{state.door_open, sprites}, state.pose, spec.obs_width, spec.obs_height);
}

Frame render_state(const EnvSpec& spec, const EnvState& state) {
  Frame f{spec.obs_width, spec.obs_height, std::vector<std::uint8_t>(frame_bytes(spec.obs_width, spec.obs_height))};
  render_state_into(f.pixels, spec, state);
  return f;
}

EnvState reset_state(const EnvSpec& spec, RngState rng) {
  const auto spawns = spec.map.spawn_candidates();
  if (spawns.empty()) throw ContractViolation("reset: env '" + spec.id + "' has no spawn candidates");
  EnvState s;
  const TileCoord spawn = spawns[uniform_index(rng, spawns.size())];
  s.pose.position = tile_center<double>(spawn);
  set_heading(s, 6 * static_cast<int>(uniform_index(rng, 4)));

  const auto goals = spec.map.goal_candidates();
  if (!goals.empty()) {
    s.active_goal = spec.goal_mode == GoalMode::RandomPerEpisode ? static_cast<int>(uniform_index(rng, goals.size())) : 0;
  }
  for (std::size_t i = 0; i < spec.map.entities().size(); ++i) s.entity_alive.set(i);
  s.health = kMaxHealth;
  if (spec.health_enabled) {
    const auto wanted = static_cast<std::size_t>(std::clamp(spec.medkit_count, 0, static_cast<int>(kMaxMedkits)));
    const std::size_t n = std::min(wanted, spec.free_tiles.size() - 1);
    for (std::size_t m = 0; m < n; ++m) {
      s.medkits[m] = sample_medkit_tile(spec, s, rng, spawn);
      s.medkit_count = static_cast<std::uint8_t>(m + 1);
    }
  }
  s.rng = rng;
  return s;
}

std::pair<EnvState, Frame> reset(const EnvSpec& spec, RngState rng) {
  EnvState s = reset_state(spec, rng);
  Frame f = render_state(spec, s);
  return {std::move(s), std::move(f)};
}

Transition step_state(const EnvSpec& spec, const EnvState& state, Action action) {
  if (state.done) throw ContractViolation("step: episode of env '" + spec.id + "' is done; reset first");
  if (!spec.allows(action)) {
    throw std::invalid_argument("step: action '" + std::string(action_name(action)) + "' is not legal in env '" +
                                spec.id + "'; legal actions: " + spec.action_set_description());
  }
  Transition tr{state};
  EnvState& s = tr.state;
  const Vec2 dir = s.pose.direction;
  const Vec2 right(-dir.y(), dir.x());
  switch (action) {
    case Action::Forward: move_agent(spec, s, Vec2(dir.x() * kMoveSpeed, dir.y() * kMoveSpeed), tr.info); break;
    case Action::Backward: move_agent(spec, s, Vec2(-dir.x() * kMoveSpeed, -dir.y() * kMoveSpeed), tr.info); break;
    case Action::StrafeRight:
      move_agent(spec, s, Vec2(right.x() * kMoveSpeed, right.y() * kMoveSpeed), tr.info);
      break;
    case Action::StrafeLeft:
      move_agent(spec, s, Vec2(-right.x() * kMoveSpeed, -right.y() * kMoveSpeed), tr.info);
      break;
    case Action::TurnLeft: set_heading(s, (s.heading + kHeadingSteps - 1) % kHeadingSteps); break;
    case Action::TurnRight: set_heading(s, (s.heading + 1) % kHeadingSteps); break;
    case Action::NoOp: break;
  }

  const TileCoord here = tile_of(s.pose.position);
  const auto entities = spec.map.entities();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const EntityInit& e = entities[i];
    if (e.kind != EntityKind::Key || e.tile != here || !s.entity_alive.test(i)) continue;
    s.inventory |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(e.color));
    s.entity_alive.reset(i);
    tr.info.events |= key_event(e.color);
  }
  for (std::size_t m = 0; m < s.medkit_count; ++m) {
    if (s.medkits[m] != here) continue;
    s.health = std::min(kMaxHealth, s.health + spec.rewards.health_restore);
    s.medkits[m] = sample_medkit_tile(spec, s, s.rng, here);
    tr.info.add(Event::PickedMedkit);
  }
  if (s.active_goal >= 0 && spec.map.goal_candidates()[static_cast<std::size_t>(s.active_goal)] == here) {
    tr.reward += spec.rewards.goal_reward;
    s.done = true;
    tr.info.add(Event::ReachedGoal);
  }
  if (spec.health_enabled && !s.done) {
    s.health -= spec.rewards.health_decay;
    if (s.health <= 0.0) {
      s.health = 0.0;
      s.done = true;
      tr.info.add(Event::Died);
    } else {
      tr.reward += spec.rewards.living_reward;
    }
  }
  s.t += 1;
  if (s.t >= spec.max_steps && !s.done) {
    s.done = true;
    tr.info.add(Event::Truncated);
  }
  tr.done = s.done;
  return tr;
}

StepResult step(const EnvSpec& spec, const EnvState& state, Action action) {
  Transition tr = step_state(spec, state, action);
  Frame obs = render_state(spec, tr.state);
  return {std::move(tr.state), std::move(obs), tr.reward, tr.done, tr.info};
}

}  // namespace tilecaster
