#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <bitset>
#include <compare>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tilecaster/error.hpp"

namespace tilecaster {

template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;
using Vec2 = Vec2T<double>;

// Half-length of the camera plane; 0.66 gives the classic ~66 degree FOV.
inline constexpr double kPlaneHalfWidth = 0.66;
inline constexpr double kAgentRadius = 0.2;

inline constexpr std::size_t kMaxDoors = 64;
inline constexpr std::size_t kMaxEntities = 64;
using DoorFlags = std::bitset<kMaxDoors>;
using EntityFlags = std::bitset<kMaxEntities>;

struct TileCoord {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const TileCoord&, const TileCoord&) = default;
};

template <typename Scalar>
TileCoord tile_of(const Vec2T<Scalar>& p) {
  return {static_cast<int>(std::floor(p.x())), static_cast<int>(std::floor(p.y()))};
}

template <typename Scalar>
Vec2T<Scalar> tile_center(TileCoord t) {
  return {static_cast<Scalar>(t.x) + Scalar(0.5), static_cast<Scalar>(t.y) + Scalar(0.5)};
}

template <typename Scalar>
bool all_finite(const Vec2T<Scalar>& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y());
}

// Observer pose. +x is east and +y is south, so the camera plane points to
// the observer's right: plane = (-dir.y, dir.x) * kPlaneHalfWidth.
template <typename Scalar>
struct PoseT {
  Vec2T<Scalar> position;
  Vec2T<Scalar> direction;
  Vec2T<Scalar> camera_plane;

  friend bool operator==(const PoseT& a, const PoseT& b) {
    return a.position == b.position && a.direction == b.direction &&
           a.camera_plane == b.camera_plane;
  }
};
using Pose = PoseT<double>;

template <typename Scalar>
Vec2T<Scalar> camera_plane_for(const Vec2T<Scalar>& direction) {
  const Scalar s = static_cast<Scalar>(kPlaneHalfWidth);
  return {-direction.y() * s, direction.x() * s};
}

// Throws ContractViolation unless direction is a finite unit vector.
template <typename Scalar>
PoseT<Scalar> make_pose(const Vec2T<Scalar>& position, const Vec2T<Scalar>& direction) {
  if (!all_finite(position) || !all_finite(direction)) {
    throw ContractViolation("make_pose: non-finite position or direction");
  }
  if (std::abs(direction.squaredNorm() - Scalar(1)) > Scalar(1e-9)) {
    throw ContractViolation("make_pose: direction must be a unit vector");
  }
  return {position, direction, camera_plane_for(direction)};
}

enum class CellType : std::uint8_t { Floor, Wall, Door };
enum class KeyColor : std::uint8_t { Red = 0, Blue = 1, Yellow = 2 };
inline constexpr int kKeyColorCount = 3;

const char* key_color_name(KeyColor c);

struct Cell {
  CellType type = CellType::Wall;
  // Wall: palette color id. Door: KeyColor.
  std::uint8_t color = 0;
  bool locked = false;
  // Index into TileMap::doors(); -1 unless type == Door. Assigned by TileMap.
  std::int16_t door = -1;

  static Cell floor() { return {CellType::Floor, 0, false, -1}; }
  static Cell wall(std::uint8_t color_id = 0) { return {CellType::Wall, color_id, false, -1}; }
  static Cell make_door(KeyColor c, bool is_locked) {
    return {CellType::Door, static_cast<std::uint8_t>(c), is_locked, -1};
  }
  KeyColor key_color() const { return static_cast<KeyColor>(color); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct DoorInfo {
  TileCoord tile;
  KeyColor color = KeyColor::Red;
  bool locked = false;
  friend bool operator==(const DoorInfo&, const DoorInfo&) = default;
};

enum class EntityKind : std::uint8_t { Key, Goal, Medkit };

struct EntityInit {
  EntityKind kind = EntityKind::Goal;
  KeyColor color = KeyColor::Red;  // meaningful for keys only
  TileCoord tile;
  friend bool operator==(const EntityInit&, const EntityInit&) = default;
};

// Immutable tile world. Construction validates the sealed border, the
// minimum size and that spawn/goal/entity tiles sit on the interior floor.
class TileMap {
 public:
  TileMap(int width, int height, std::vector<Cell> cells, std::vector<TileCoord> spawn_candidates,
          std::vector<TileCoord> goal_candidates, std::vector<EntityInit> entities);

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int tx, int ty) const { return tx >= 0 && ty >= 0 && tx < width_ && ty < height_; }

  // Unchecked access; see cell_at() for the checked variant.
  const Cell& operator()(int tx, int ty) const { return cells_[static_cast<std::size_t>(ty) * width_ + tx]; }

  // True when the cell stops rays and bodies: walls, and doors not flagged open.
  bool blocks(int tx, int ty, const DoorFlags& door_open) const {
    const Cell& c = (*this)(tx, ty);
    return c.type == CellType::Wall || (c.type == CellType::Door && !door_open.test(c.door));
  }

  std::span<const Cell> cells() const { return cells_; }
  std::span<const DoorInfo> doors() const { return doors_; }
  std::span<const TileCoord> spawn_candidates() const { return spawns_; }
  std::span<const TileCoord> goal_candidates() const { return goals_; }
  std::span<const EntityInit> entities() const { return entities_; }

  friend bool operator==(const TileMap&, const TileMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<Cell> cells_;
  std::vector<DoorInfo> doors_;
  std::vector<TileCoord> spawns_;
  std::vector<TileCoord> goals_;
  std::vector<EntityInit> entities_;
};

// Checked cell lookup; out-of-range coordinates throw ContractViolation.
const Cell& cell_at(const TileMap& map, int tx, int ty);

// Disc-vs-unit-square overlap against every wall and closed door.
// Requires radius in (0, 0.5). Tiles outside the map count as blocked.
template <typename Scalar>
bool circle_blocked(const TileMap& map, const Vec2T<Scalar>& center, Scalar radius,
                    const DoorFlags& door_open) {
  if (!(radius > Scalar(0) && radius < Scalar(0.5))) {
    throw ContractViolation("circle_blocked: radius must lie in (0, 0.5)");
  }
  const Scalar cx = center.x();
  const Scalar cy = center.y();
  const int x0 = static_cast<int>(std::floor(cx - radius));
  const int x1 = static_cast<int>(std::floor(cx + radius));
  const int y0 = static_cast<int>(std::floor(cy - radius));
  const int y1 = static_cast<int>(std::floor(cy + radius));
  const Scalar r2 = radius * radius;
  for (int ty = y0; ty <= y1; ++ty) {
    for (int tx = x0; tx <= x1; ++tx) {
      if (map.in_bounds(tx, ty) && !map.blocks(tx, ty, door_open)) continue;
      const Scalar qx = std::clamp(cx, static_cast<Scalar>(tx), static_cast<Scalar>(tx + 1));
      const Scalar qy = std::clamp(cy, static_cast<Scalar>(ty), static_cast<Scalar>(ty + 1));
      const Scalar dx = cx - qx;
      const Scalar dy = cy - qy;
      if (dx * dx + dy * dy < r2) return true;
    }
  }
  return false;
}

}  // namespace tilecaster
