#include "tilecaster/map_dsl.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>

namespace tilecaster {

namespace {

// Generated wall symbols: uppercase letters outside the reserved set, A..P.
constexpr std::string_view kLetterWalls = "ACDEFHIJKLMNOP";
static_assert(kLetterWalls.size() + 10 == kWallColorCount);

struct SourceLine {
  std::string_view text;
  int line_number;  // 1-based
};

std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({line, number++});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::optional<KeyColor> key_of(char c) {
  switch (c) {
    case 'r': return KeyColor::Red;
    case 'b': return KeyColor::Blue;
    case 'y': return KeyColor::Yellow;
    default: return std::nullopt;
  }
}

char key_symbol(KeyColor c) {
  switch (c) {
    case KeyColor::Red: return 'r';
    case KeyColor::Blue: return 'b';
    case KeyColor::Yellow: return 'y';
  }
  return '?';
}

char door_symbol(KeyColor c, bool locked) {
  if (locked) {
    switch (c) {
      case KeyColor::Red: return 'R';
      case KeyColor::Blue: return 'B';
      case KeyColor::Yellow: return 'Y';
    }
  }
  switch (c) {
    case KeyColor::Blue: return '"';
    case KeyColor::Yellow: return '\\';
    case KeyColor::Red: break;
  }
  throw std::invalid_argument("render_map_ascii: no symbol for an unlocked red door");
}

std::optional<Cell> door_of(char c) {
  switch (c) {
    case '"': return Cell::make_door(KeyColor::Blue, false);
    case '\\': return Cell::make_door(KeyColor::Yellow, false);
    case 'R': return Cell::make_door(KeyColor::Red, true);
    case 'B': return Cell::make_door(KeyColor::Blue, true);
    case 'Y': return Cell::make_door(KeyColor::Yellow, true);
    default: return std::nullopt;
  }
}

std::string printable(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x20 && u < 0x7f) return std::string("'") + c + "'";
  std::ostringstream os;
  os << "byte 0x" << std::hex << static_cast<int>(u);
  return os.str();
}

bool passable(const Cell& c, DoorPolicy policy, unsigned keys) {
  switch (c.type) {
    case CellType::Floor: return true;
    case CellType::Wall: return false;
    case CellType::Door:
      if (policy == DoorPolicy::AllOpen) return true;
      if (policy == DoorPolicy::AllClosed) return false;
      return !c.locked || (keys & (1u << static_cast<unsigned>(c.color))) != 0;
  }
  return false;
}

// Breadth-first search over (tile, keys held). Returns the parent chain of the
// first state reaching `to`, or an empty vector.
std::vector<TileCoord> search(const TileMap& map, TileCoord from, TileCoord to, DoorPolicy policy) {
  const int w = map.width();
  const int h = map.height();
  if (!map.in_bounds(from.x, from.y) || !map.in_bounds(to.x, to.y)) return {};
  std::vector<unsigned> key_at(static_cast<std::size_t>(w) * h, 0);
  for (const EntityInit& e : map.entities()) {
    if (e.kind == EntityKind::Key) {
      key_at[static_cast<std::size_t>(e.tile.y) * w + e.tile.x] |= 1u << static_cast<unsigned>(e.color);
    }
  }
  constexpr unsigned kMasks = 1u << kKeyColorCount;
  const std::size_t n_states = static_cast<std::size_t>(w) * h * kMasks;
  std::vector<std::int64_t> parent(n_states, -2);
  auto index = [&](int x, int y, unsigned m) {
    return (static_cast<std::size_t>(y) * w + x) * kMasks + m;
  };
  if (map(from.x, from.y).type == CellType::Wall) return {};
  const unsigned start_keys = policy == DoorPolicy::Keyed ? key_at[static_cast<std::size_t>(from.y) * w + from.x] : 0;
  std::deque<std::size_t> queue;
  parent[index(from.x, from.y, start_keys)] = -1;
  queue.push_back(index(from.x, from.y, start_keys));
  constexpr std::array<TileCoord, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const unsigned keys = static_cast<unsigned>(s % kMasks);
    const int tile = static_cast<int>(s / kMasks);
    const int x = tile % w;
    const int y = tile / w;
    if (x == to.x && y == to.y) {
      std::vector<TileCoord> path;
      for (std::int64_t cur = static_cast<std::int64_t>(s); cur >= 0; cur = parent[static_cast<std::size_t>(cur)]) {
        const int t = static_cast<int>(static_cast<std::size_t>(cur) / kMasks);
        path.push_back({t % w, t / w});
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (TileCoord d : kSteps) {
      const int nx = x + d.x;
      const int ny = y + d.y;
      if (!map.in_bounds(nx, ny) || !passable(map(nx, ny), policy, keys)) continue;
      unsigned nkeys = keys;
      if (policy == DoorPolicy::Keyed) nkeys |= key_at[static_cast<std::size_t>(ny) * w + nx];
      const std::size_t ns = index(nx, ny, nkeys);
      if (parent[ns] != -2) continue;
      parent[ns] = static_cast<std::int64_t>(s);
      queue.push_back(ns);
    }
  }
  return {};
}

}  // namespace

std::string format_diagnostic(const ParseDiagnostic& d, std::string_view source_name) {
  std::ostringstream os;
  os << source_name << ':' << d.line << ':' << d.column << ": "
     << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
  return os.str();
}

MapParseError::MapParseError(std::string source_name, std::vector<ParseDiagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string msg = "map '" + source_name + "' failed to parse";
        for (const auto& d : diagnostics) {
          if (d.severity == Severity::Error) msg += "\n  " + format_diagnostic(d, source_name);
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

char wall_symbol(int color_id) {
  if (color_id == 0) return '#';
  if (color_id >= 1 && color_id <= 9) return static_cast<char>('0' + color_id);
  if (color_id >= 10 && color_id < kWallColorCount) return kLetterWalls[static_cast<std::size_t>(color_id - 10)];
  throw std::out_of_range("wall_symbol: color id " + std::to_string(color_id) + " has no symbol");
}

std::optional<int> wall_color_of(char c) {
  if (c == '#') return 0;
  if (c >= '1' && c <= '9') return c - '0';
  if (const auto pos = kLetterWalls.find(c); pos != std::string_view::npos) return static_cast<int>(pos) + 10;
  return std::nullopt;
}

ParseResult parse_map(const MapSource& src) {
  ParseResult result;
  auto& diags = result.diagnostics;
  auto error = [&](int line, int col, std::string msg) {
    diags.push_back({line, col, std::move(msg), Severity::Error});
  };

  const std::vector<SourceLine> all = split_lines(src.text);
  std::size_t first = 0;
  std::size_t last = all.size();
  while (first < last && all[first].text.empty()) ++first;
  while (last > first && all[last - 1].text.empty()) --last;
  const std::span<const SourceLine> rows(all.data() + first, last - first);

  if (rows.size() < 3) {
    error(rows.empty() ? 1 : rows.front().line_number, 1, "map needs at least 3 rows");
    return result;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.text.size());
  if (width < 3) {
    error(rows.front().line_number, 1, "map needs at least 3 columns");
    return result;
  }

  const int w = static_cast<int>(width);
  const int h = static_cast<int>(rows.size());
  std::vector<Cell> cells(static_cast<std::size_t>(w) * h, Cell::wall());
  std::vector<TileCoord> spawns;
  std::vector<TileCoord> goals;
  std::vector<EntityInit> entities;
  std::size_t door_count = 0;

  for (int ty = 0; ty < h; ++ty) {
    const SourceLine& row = rows[static_cast<std::size_t>(ty)];
    for (int tx = 0; tx < static_cast<int>(row.text.size()); ++tx) {
      const char c = row.text[static_cast<std::size_t>(tx)];
      Cell& cell = cells[static_cast<std::size_t>(ty) * w + tx];
      const int line = row.line_number;
      const int col = tx + 1;
      bool known = true;
      if (const auto wall = wall_color_of(c)) {
        cell = Cell::wall(static_cast<std::uint8_t>(*wall));
      } else if (c == '.' || c == ' ') {
        cell = Cell::floor();
      } else if (c == 'S') {
        cell = Cell::floor();
        spawns.push_back({tx, ty});
      } else if (c == 'G') {
        cell = Cell::floor();
        goals.push_back({tx, ty});
        entities.push_back({EntityKind::Goal, KeyColor::Yellow, {tx, ty}});
      } else if (const auto key = key_of(c)) {
        cell = Cell::floor();
        entities.push_back({EntityKind::Key, *key, {tx, ty}});
      } else if (const auto door = door_of(c)) {
        cell = *door;
        if (++door_count == kMaxDoors + 1) {
          error(line, col, "too many doors (limit " + std::to_string(kMaxDoors) + ")");
        }
      } else if (c == '\t') {
        known = false;
        error(line, col, "tab character; use '.' or space for floor");
      } else {
        known = false;
        error(line, col, "unknown map symbol " + printable(c));
      }
      const bool border = tx == 0 || ty == 0 || tx == w - 1 || ty == h - 1;
      if (known && border && cell.type != CellType::Wall) {
        error(line, col, "map is not sealed: border cell " + printable(c) + " must be a wall");
      }
    }
  }
  if (entities.size() > kMaxEntities) {
    const EntityInit& e = entities[kMaxEntities];
    error(rows[static_cast<std::size_t>(e.tile.y)].line_number, e.tile.x + 1,
          "too many entities (limit " + std::to_string(kMaxEntities) + ")");
  }
  if (spawns.empty()) {
    error(rows.front().line_number, 1, "map has no spawn candidate ('S')");
  }

  const bool has_error =
      std::any_of(diags.begin(), diags.end(), [](const auto& d) { return d.severity == Severity::Error; });
  if (has_error) return result;

  result.map.emplace(w, h, std::move(cells), std::move(spawns), std::move(goals), std::move(entities));
  const TileMap& map = *result.map;
  for (TileCoord g : map.goal_candidates()) {
    const bool reachable = std::any_of(map.spawn_candidates().begin(), map.spawn_candidates().end(),
                                       [&](TileCoord s) { return tile_reachable(map, s, g, DoorPolicy::AllOpen); });
    if (!reachable) {
      diags.push_back({rows[static_cast<std::size_t>(g.y)].line_number, g.x + 1,
                       "goal candidate is unreachable from every spawn", Severity::Warning});
    }
  }
  return result;
}

std::string render_map_ascii(const TileMap& map) {
  const int w = map.width();
  const int h = map.height();
  std::vector<std::string> grid(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), '.'));
  for (int ty = 0; ty < h; ++ty) {
    for (int tx = 0; tx < w; ++tx) {
      const Cell& c = map(tx, ty);
      char& out = grid[static_cast<std::size_t>(ty)][static_cast<std::size_t>(tx)];
      switch (c.type) {
        case CellType::Floor: out = '.'; break;
        case CellType::Wall: out = wall_symbol(c.color); break;
        case CellType::Door: out = door_symbol(c.key_color(), c.locked); break;
      }
    }
  }
  auto put = [&](TileCoord t, char sym) { grid[static_cast<std::size_t>(t.y)][static_cast<std::size_t>(t.x)] = sym; };
  for (TileCoord s : map.spawn_candidates()) put(s, 'S');
  for (const EntityInit& e : map.entities()) {
    switch (e.kind) {
      case EntityKind::Goal: put(e.tile, 'G'); break;
      case EntityKind::Key: put(e.tile, key_symbol(e.color)); break;
      case EntityKind::Medkit: throw std::invalid_argument("render_map_ascii: medkits have no map symbol");
    }
  }
  std::string text;
  text.reserve(static_cast<std::size_t>(w + 1) * h);
  for (int ty = 0; ty < h; ++ty) {
    if (ty > 0) text += '\n';
    text += grid[static_cast<std::size_t>(ty)];
  }
  return text;
}

bool tile_reachable(const TileMap& map, TileCoord from, TileCoord to, DoorPolicy policy) {
  return !search(map, from, to, policy).empty();
}

std::vector<TileCoord> keyed_tile_path(const TileMap& map, TileCoord from, TileCoord to) {
  return search(map, from, to, DoorPolicy::Keyed);
}

}  // namespace tilecaster
