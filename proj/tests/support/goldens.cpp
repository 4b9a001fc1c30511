#include "goldens.hpp"

#include "maps.hpp"
#include "tilecaster/map_dsl.hpp"
#include "tilecaster/renderer.hpp"

namespace tilecaster::testing {

std::vector<SymbolCase> symbol_cases() {
  std::vector<SymbolCase> v{
      {'#', Cell::wall(0), {}},
      {'.', Cell::floor(), {}},
      {' ', Cell::floor(), {}},
      {'G', Cell::floor(), EntityInit{EntityKind::Goal, KeyColor::Yellow, {2, 1}}, true},
      {'r', Cell::floor(), EntityInit{EntityKind::Key, KeyColor::Red, {2, 1}}},
      {'b', Cell::floor(), EntityInit{EntityKind::Key, KeyColor::Blue, {2, 1}}},
      {'y', Cell::floor(), EntityInit{EntityKind::Key, KeyColor::Yellow, {2, 1}}},
      {'"', Cell::make_door(KeyColor::Blue, false), {}},
      {'\\', Cell::make_door(KeyColor::Yellow, false), {}},
      {'R', Cell::make_door(KeyColor::Red, true), {}},
      {'B', Cell::make_door(KeyColor::Blue, true), {}},
      {'Y', Cell::make_door(KeyColor::Yellow, true), {}},
  };
  for (char d = '1'; d <= '9'; ++d) v.push_back({d, Cell::wall(static_cast<std::uint8_t>(d - '0')), {}});
  const std::string letters = "ACDEFHIJKLMNOP";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    v.push_back({letters[i], Cell::wall(static_cast<std::uint8_t>(10 + i)), {}});
  }
  return v;
}

std::string check_symbol_case(const SymbolCase& c) {
  const std::string text = std::string("#####\n#S") + c.symbol + ".#\n#####";
  const std::string label = std::string("symbol '") + c.symbol + "': ";
  const ParseResult r = parse_map(MapSource{text, "golden.map"});
  if (!r.ok() || !r.diagnostics.empty()) return label + "did not parse cleanly";
  const TileMap& m = *r.map;
  Cell expected = c.cell;
  if (expected.type == CellType::Door) expected.door = 0;
  if (!(m(2, 1) == expected)) return label + "wrong cell";
  if (c.entity) {
    if (m.entities().size() != 1 || !(m.entities()[0] == *c.entity)) return label + "wrong entity";
  } else if (!m.entities().empty()) {
    return label + "unexpected entity";
  }
  if (m.goal_candidates().size() != (c.goal_candidate ? 1u : 0u)) return label + "wrong goal candidates";
  if (m.spawn_candidates().size() != 1) return label + "wrong spawn candidates";
  const ParseResult again = parse_map(MapSource{render_map_ascii(m), "golden.map"});
  if (!again.ok() || !(*again.map == m)) return label + "does not round-trip";
  return {};
}

int mirror_trial(RngState& rng) {
  const int w = 4 + static_cast<int>(uniform_index(rng, 12));
  const int h = 4 + static_cast<int>(uniform_index(rng, 12));
  const TileMap m = random_map(rng, w, h, {0.25, 0.08});
  const TileMap mm = mirror_map(m);
  auto flip = [w](TileCoord t) { return TileCoord{w - 1 - t.x, t.y}; };
  const DoorFlags open = random_door_flags(rng, m);
  const DoorFlags mopen = remap_door_flags(m, mm, open, flip);
  const Vec2 p = dyadic_point_in(rng, random_floor_tile(rng, m, open));
  const Vec2 d = random_unit(rng);
  std::vector<Sprite> sprites;
  std::vector<Sprite> msprites;
  for (int s = 0; s < 3; ++s) {
    const TileCoord t = random_floor_tile(rng, m, open);
    const auto kind = static_cast<SpriteKind>(uniform_index(rng, 3));
    const auto color = static_cast<KeyColor>(uniform_index(rng, 3));
    sprites.push_back({tile_center<double>(t), kind, color, true});
    msprites.push_back({tile_center<double>(flip(t)), kind, color, true});
  }
  const Frame f = render_frame(m, {open, sprites}, make_pose(p, d), 64, 48);
  const Frame g = render_frame(mm, {mopen, msprites}, make_pose(Vec2(w - p.x(), p.y()), Vec2(-d.x(), d.y())), 64, 48);
  int mismatches = 0;
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 64; ++x) mismatches += f.pixel(x, y) != g.pixel(63 - x, y);
  }
  return mismatches;
}

int rotation_trial(RngState& rng) {
  const int n = 5 + static_cast<int>(uniform_index(rng, 10));
  const TileMap m = random_rotation_symmetric_map(rng, n, {0.25, 0.08});
  auto rot = [n](TileCoord t) { return TileCoord{n - 1 - t.y, t.x}; };
  const DoorFlags open = random_door_flags(rng, m);
  const DoorFlags ropen = remap_door_flags(m, m, open, rot);
  const Vec2 p = dyadic_point_in(rng, random_floor_tile(rng, m, open));
  const Vec2 d = random_unit(rng);
  std::vector<Sprite> sprites;
  std::vector<Sprite> rsprites;
  for (int s = 0; s < 3; ++s) {
    const TileCoord t = random_floor_tile(rng, m, open);
    const auto kind = static_cast<SpriteKind>(uniform_index(rng, 3));
    sprites.push_back({tile_center<double>(t), kind, KeyColor::Blue, true});
    rsprites.push_back({tile_center<double>(rot(t)), kind, KeyColor::Blue, true});
  }
  const Frame f = render_frame(m, {open, sprites}, make_pose(p, d), 64, 64);
  const Frame g = render_frame(m, {ropen, rsprites}, make_pose(Vec2(n - p.y(), p.x()), Vec2(-d.y(), d.x())), 64, 64);
  int mismatches = 0;
  for (std::size_t i = 0; i < f.pixels.size(); i += 3) {
    mismatches += f.pixels[i] != g.pixels[i] || f.pixels[i + 1] != g.pixels[i + 1] || f.pixels[i + 2] != g.pixels[i + 2];
  }
  return mismatches;
}

}  // namespace tilecaster::testing
