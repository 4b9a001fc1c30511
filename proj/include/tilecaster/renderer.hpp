#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tilecaster/geometry.hpp"

namespace tilecaster {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Frozen 16-entry palette. 0 is the default wall, 1..9 the digit walls.
namespace palette {
inline constexpr int kCeiling = 10;
inline constexpr int kFloor = 11;
inline constexpr int kRed = 12;
inline constexpr int kBlue = 13;
inline constexpr int kYellow = 14;
inline constexpr int kGoal = 15;
}  // namespace palette

inline constexpr std::array<Rgb, 16> kPalette{{
    {136, 136, 136},  // 0  default wall
    {196, 52, 52},    // 1
    {212, 124, 36},   // 2
    {200, 188, 40},   // 3
    {72, 176, 56},    // 4
    {40, 168, 152},   // 5
    {48, 112, 204},   // 6
    {104, 64, 196},   // 7
    {180, 56, 172},   // 8
    {140, 96, 60},    // 9
    {40, 40, 48},     // ceiling
    {92, 88, 80},     // floor
    {224, 32, 32},    // red
    {40, 80, 232},    // blue
    {236, 212, 28},   // yellow
    {255, 196, 0},    // goal
}};

// Letter walls (color ids 10..23).
inline constexpr std::array<Rgb, 14> kGeneratedWallColors{{
    {160, 120, 88}, {88, 136, 112}, {120, 96, 152}, {176, 144, 96}, {96, 128, 168},
    {168, 88, 104}, {128, 152, 72}, {72, 104, 120}, {184, 128, 152}, {112, 112, 72},
    {152, 168, 184}, {96, 72, 56}, {64, 144, 88}, {144, 72, 48},
}};

Rgb wall_rgb(int color_id);
Rgb key_rgb(KeyColor c);

inline constexpr double kDistanceAttenuation = 0.15;  // per tile
inline constexpr double kGrazingShade = 0.7;          // face shade at grazing incidence
inline constexpr double kSpriteNearClip = 0.05;

enum class HitSide : std::uint8_t { XFace, YFace };

struct RayHit {
  double perp_distance = 0;  // t such that hit = origin + t * ray_dir
  HitSide side = HitSide::XFace;
  TileCoord cell;
  CellType kind = CellType::Wall;
  std::uint8_t color_id = 0;  // wall color id, or KeyColor for doors
  double wall_u = 0;          // fractional hit position along the face, [0, 1)
  int boundary_steps = 0;
};

inline int dda_step_bound(const TileMap& map) { return 2 * (map.width() + map.height()); }

// Marches tile boundary crossings from `origin` until the ray enters a wall
// or closed door. `origin` must lie in a non-blocking cell; `ray_dir` need
// not be normalized. For a camera ray dir + plane * k the returned distance
// is the fisheye-corrected perpendicular distance.
RayHit cast_ray_dda(const TileMap& map, const DoorFlags& door_open, const Vec2& origin, const Vec2& ray_dir);

enum class SpriteKind : std::uint8_t { Key, Goal, Medkit };

struct Sprite {
  Vec2 world_pos;  // tile center
  SpriteKind kind = SpriteKind::Goal;
  KeyColor color = KeyColor::Red;
  bool visible = true;
};

struct WorldView {
  DoorFlags door_open;
  std::span<const Sprite> sprites;
};

struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  Rgb pixel(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  friend bool operator==(const Frame&, const Frame&) = default;
};

inline constexpr std::size_t frame_bytes(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
}

// Camera-space abscissa of a column: -1 at the left edge, +1 at the right,
// and exactly antisymmetric under column mirroring.
inline double camera_x(int column, int width) {
  return static_cast<double>(2 * column - (width - 1)) / static_cast<double>(width - 1);
}

using ZBuffer = std::vector<double>;

// Renders into `out` (exactly frame_bytes(width, height) bytes, fully
// overwritten). Requires width, height >= 8. When `zbuffer` is given it
// receives each column's wall distance.
void render_into(std::span<std::uint8_t> out, const TileMap& map, const WorldView& world, const Pose& pose,
                 int width, int height, ZBuffer* zbuffer = nullptr);

Frame render_frame(const TileMap& map, const WorldView& world, const Pose& pose, int width, int height);

}  // namespace tilecaster
