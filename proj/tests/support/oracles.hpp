#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tilecaster/geometry.hpp"

namespace tilecaster::testing {

struct MarchHit {
  TileCoord cell;
  double t = 0;  // hit = origin + t * ray_dir
};

// Reference ray caster that knows nothing about tile-boundary arithmetic:
// it walks the ray in fixed arc-length increments and only asks which tile a
// point falls in. When one increment changes tiles, the entry points are
// located by bisection on that predicate. A ray through an exact corner
// enters the vertically adjacent tile first.
MarchHit march_oracle(const TileMap& map, const DoorFlags& door_open, const Vec2& origin, const Vec2& ray_dir,
                      double arc_step = 1e-4);

// Point-sampling stand-in for circle_blocked: `rim` points on the boundary,
// the boundary points towards each axis and each lattice corner inside the
// disc, and an interior grid of `grid` x `grid` points clipped to the disc.
bool circle_blocked_sampled(const TileMap& map, const Vec2& center, double radius, const DoorFlags& door_open,
                            int rim = 256, int grid = 16);

// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tilecaster::testing
