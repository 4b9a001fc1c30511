#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tilecaster/geometry.hpp"

namespace tilecaster {

struct MapSource {
  std::string text;
  std::string name;
};

enum class Severity : std::uint8_t { Error, Warning };

// line/column are 1-based positions in the original source text.
struct ParseDiagnostic {
  int line = 0;
  int column = 0;
  std::string message;
  Severity severity = Severity::Error;
  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

// "name:line:col: error: message"
std::string format_diagnostic(const ParseDiagnostic& d, std::string_view source_name);

struct ParseResult {
  std::optional<TileMap> map;  // empty iff any diagnostic is an Error
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return map.has_value(); }
};

// Parses the ASCII map format. Symbols:
//   #        default wall          1-9      colored wall (color id = digit)
//   A,C-F,H-P  generated wall colors, ids 10..23 in alphabetical order
//   . space  floor                 S        spawn candidate
//   G        goal candidate        r b y    red / blue / yellow key
//   "        blue unlocked door    \        yellow unlocked door
//   R B Y    red / blue / yellow locked door
// Ragged lines are right-padded with wall. The border must be wall.
ParseResult parse_map(const MapSource& src);

// Inverse of parse_map for maps it produced; floors are emitted as '.'.
std::string render_map_ascii(const TileMap& map);

// Symbol for a wall color id; throws std::out_of_range past the last id.
char wall_symbol(int color_id);
// Color id for a wall symbol, or nullopt when c is not a wall symbol.
std::optional<int> wall_color_of(char c);
inline constexpr int kWallColorCount = 24;

// Thrown by APIs that need a valid map but got Error diagnostics.
class MapParseError : public std::runtime_error {
 public:
  MapParseError(std::string source_name, std::vector<ParseDiagnostic> diagnostics);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

// --- reachability -----------------------------------------------------------

enum class DoorPolicy : std::uint8_t {
  AllOpen,    // every door passable
  AllClosed,  // every door blocks
  Keyed,      // unlocked doors passable; locked doors need their key, which is
              // picked up by stepping on its tile
};

// 4-connected search over non-wall tiles. With DoorPolicy::Keyed the search
// state includes the set of keys held.
bool tile_reachable(const TileMap& map, TileCoord from, TileCoord to, DoorPolicy policy);

// Shortest 4-connected tile path under DoorPolicy::Keyed, including both
// endpoints; empty when unreachable.
std::vector<TileCoord> keyed_tile_path(const TileMap& map, TileCoord from, TileCoord to);

}  // namespace tilecaster
