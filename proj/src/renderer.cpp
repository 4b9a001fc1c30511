#include "tilecaster/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace tilecaster {

Rgb wall_rgb(int color_id) {
  if (color_id >= 0 && color_id <= 9) return kPalette[static_cast<std::size_t>(color_id)];
  const auto generated = static_cast<std::size_t>(color_id - 10);
  if (color_id >= 10 && generated < kGeneratedWallColors.size()) return kGeneratedWallColors[generated];
  return kPalette[0];
}

Rgb key_rgb(KeyColor c) {
  switch (c) {
    case KeyColor::Red: return kPalette[palette::kRed];
    case KeyColor::Blue: return kPalette[palette::kBlue];
    case KeyColor::Yellow: return kPalette[palette::kYellow];
  }
  return kPalette[0];
}

RayHit cast_ray_dda(const TileMap& map, const DoorFlags& door_open, const Vec2& origin, const Vec2& ray_dir) {
  const double ox = origin.x();
  const double oy = origin.y();
  const double rx = ray_dir.x();
  const double ry = ray_dir.y();
  if (!all_finite(origin) || !all_finite(ray_dir) || (rx == 0.0 && ry == 0.0)) {
    throw ContractViolation("cast_ray_dda: ray direction must be finite and non-zero");
  }
  int mx = static_cast<int>(std::floor(ox));
  int my = static_cast<int>(std::floor(oy));
  if (!map.in_bounds(mx, my) || map.blocks(mx, my, door_open)) {
    throw ContractViolation("cast_ray_dda: origin must lie inside a non-blocking cell");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double delta_x = rx == 0.0 ? kInf : std::abs(1.0 / rx);
  const double delta_y = ry == 0.0 ? kInf : std::abs(1.0 / ry);
  const int step_x = rx < 0.0 ? -1 : 1;
  const int step_y = ry < 0.0 ? -1 : 1;
  double side_x = kInf;
  double side_y = kInf;
  if (rx != 0.0) side_x = (rx < 0.0 ? ox - mx : (mx + 1.0) - ox) * delta_x;
  if (ry != 0.0) side_y = (ry < 0.0 ? oy - my : (my + 1.0) - oy) * delta_y;

  const int bound = dda_step_bound(map);
  RayHit hit;
  int steps = 0;
  for (;;) {
    if (side_x < side_y) {
      side_x += delta_x;
      mx += step_x;
      hit.side = HitSide::XFace;
    } else {
      side_y += delta_y;
      my += step_y;
      hit.side = HitSide::YFace;
    }
    ++steps;
    if (steps > bound || !map.in_bounds(mx, my)) {
      throw std::logic_error("cast_ray_dda: ray escaped the map after " + std::to_string(steps) +
                             " steps; map is not sealed");
    }
    if (map.blocks(mx, my, door_open)) break;
  }

  if (hit.side == HitSide::XFace) {
    hit.perp_distance = ((mx - ox) + (1 - step_x) / 2) / rx;
    const double wy = oy + hit.perp_distance * ry;
    hit.wall_u = wy - std::floor(wy);
  } else {
    hit.perp_distance = ((my - oy) + (1 - step_y) / 2) / ry;
    const double wx = ox + hit.perp_distance * rx;
    hit.wall_u = wx - std::floor(wx);
  }
  const Cell& cell = map(mx, my);
  hit.cell = {mx, my};
  hit.kind = cell.type;
  hit.color_id = cell.color;
  hit.boundary_steps = steps;
  return hit;
}

namespace {

std::uint8_t shade(std::uint8_t channel, double factor) {
  return static_cast<std::uint8_t>(std::min(255.0, channel * factor + 0.5));
}

Rgb surface_rgb(const RayHit& hit, const TileMap& map) {
  if (hit.kind != CellType::Door) return wall_rgb(hit.color_id);
  const Rgb base = key_rgb(static_cast<KeyColor>(hit.color_id));
  if (map(hit.cell.x, hit.cell.y).locked) return base;
  // Unlocked doors are drawn as a lighter tint of their color.
  return {static_cast<std::uint8_t>((base.r + 255) / 2), static_cast<std::uint8_t>((base.g + 255) / 2),
          static_cast<std::uint8_t>((base.b + 255) / 2)};
}

// Procedural silhouettes in billboard coordinates: a = |horizontal offset|
// in [0, 1), v in (-1, 1) from top to bottom. Symmetric in the horizontal
// axis so mirrored views stay pixel-exact.
std::optional<Rgb> sprite_texel(const Sprite& s, double a, double v) {
  switch (s.kind) {
    case SpriteKind::Key: {
      const double dv = v - 0.05;
      const double r2 = a * a + dv * dv;
      const bool ring = r2 >= 0.15 * 0.15 && r2 <= 0.3 * 0.3;
      const bool shaft = a < 0.08 && v >= 0.3 && v <= 0.85;
      const bool teeth = a < 0.22 && ((v >= 0.6 && v <= 0.68) || (v >= 0.77 && v <= 0.85));
      if (ring || shaft || teeth) return key_rgb(s.color);
      return std::nullopt;
    }
    case SpriteKind::Medkit: {
      const bool vertical = a < 0.12 && v >= 0.25 && v <= 0.85;
      const bool horizontal = a < 0.3 && v >= 0.43 && v <= 0.67;
      if (vertical || horizontal) return kPalette[palette::kRed];
      return std::nullopt;
    }
    case SpriteKind::Goal:
      if (a + std::abs(v - 0.35) < 0.45) return kPalette[palette::kGoal];
      return std::nullopt;
  }
  return std::nullopt;
}

struct ProjectedSprite {
  std::size_t index;
  double depth;    // along the view direction
  double center;   // camera-space abscissa of the sprite center
  double half_w;   // half width in camera-space units
};

}  // namespace

void render_into(std::span<std::uint8_t> out, const TileMap& map, const WorldView& world, const Pose& pose,
                 int width, int height, ZBuffer* zbuffer) {
  if (width < 8 || height < 8) throw ContractViolation("render_into: frame must be at least 8x8");
  if (out.size() != frame_bytes(width, height)) {
    throw ContractViolation("render_into: output span has the wrong size");
  }
  thread_local ZBuffer scratch;
  ZBuffer& zbuf = zbuffer != nullptr ? *zbuffer : scratch;
  zbuf.assign(static_cast<std::size_t>(width), 0.0);

  const std::size_t stride = static_cast<std::size_t>(width) * 3;
  const double half_h = 0.5 * height;
  const Rgb ceiling = kPalette[palette::kCeiling];
  const Rgb floor = kPalette[palette::kFloor];
  const double dx = pose.direction.x();
  const double dy = pose.direction.y();
  const double px = pose.camera_plane.x();
  const double py = pose.camera_plane.y();

  for (int c = 0; c < width; ++c) {
    const double k = camera_x(c, width);
    const Vec2 ray(dx + px * k, dy + py * k);
    const RayHit hit = cast_ray_dda(map, world.door_open, pose.position, ray);
    zbuf[static_cast<std::size_t>(c)] = hit.perp_distance;

    const double normal = hit.side == HitSide::XFace ? ray.x() : ray.y();
    const double incidence = std::abs(normal) / std::sqrt(ray.x() * ray.x() + ray.y() * ray.y());
    const double factor =
        (kGrazingShade + (1.0 - kGrazingShade) * incidence) / (1.0 + kDistanceAttenuation * hit.perp_distance);
    const Rgb base = surface_rgb(hit, map);
    const Rgb wall{shade(base.r, factor), shade(base.g, factor), shade(base.b, factor)};
    const double half_slice = half_h / hit.perp_distance;

    std::uint8_t* px_out = out.data() + static_cast<std::size_t>(c) * 3;
    for (int y = 0; y < height; ++y, px_out += stride) {
      const double offset = (y + 0.5) - half_h;
      const Rgb& col = std::abs(offset) < half_slice ? wall : (offset < 0.0 ? ceiling : floor);
      px_out[0] = col.r;
      px_out[1] = col.g;
      px_out[2] = col.b;
    }
  }

  if (world.sprites.empty()) return;

  thread_local std::vector<ProjectedSprite> projected;
  projected.clear();
  const double dir_len2 = dx * dx + dy * dy;
  const double plane_len2 = px * px + py * py;
  const double plane_len = std::sqrt(plane_len2);
  for (std::size_t i = 0; i < world.sprites.size(); ++i) {
    const Sprite& s = world.sprites[i];
    if (!s.visible) continue;
    const double rx = s.world_pos.x() - pose.position.x();
    const double ry = s.world_pos.y() - pose.position.y();
    const double depth = (rx * dx + ry * dy) / dir_len2;
    if (depth <= kSpriteNearClip) continue;
    const double lateral = (rx * px + ry * py) / plane_len2;
    projected.push_back({i, depth, lateral / depth, 0.5 / (plane_len * depth)});
  }
  std::sort(projected.begin(), projected.end(), [](const ProjectedSprite& a, const ProjectedSprite& b) {
    return a.depth != b.depth ? a.depth > b.depth : a.index < b.index;
  });

  for (const ProjectedSprite& p : projected) {
    const Sprite& s = world.sprites[p.index];
    const double half_slice = half_h / p.depth;
    for (int c = 0; c < width; ++c) {
      if (!(p.depth < zbuf[static_cast<std::size_t>(c)])) continue;
      const double du = (camera_x(c, width) - p.center) / p.half_w;
      const double a = std::abs(du);
      if (!(a < 1.0)) continue;
      std::uint8_t* px_out = out.data() + static_cast<std::size_t>(c) * 3;
      for (int y = 0; y < height; ++y, px_out += stride) {
        const double v = ((y + 0.5) - half_h) / half_slice;
        if (!(std::abs(v) < 1.0)) continue;
        if (const auto texel = sprite_texel(s, a, v)) {
          px_out[0] = texel->r;
          px_out[1] = texel->g;
          px_out[2] = texel->b;
        }
      }
    }
  }
}

Frame render_frame(const TileMap& map, const WorldView& world, const Pose& pose, int width, int height) {
  if (width < 8 || height < 8) throw ContractViolation("render_frame: frame must be at least 8x8");
  Frame f{width, height, std::vector<std::uint8_t>(frame_bytes(width, height))};
  render_into(f.pixels, map, world, pose, width, height);
  return f;
}

}  // namespace tilecaster
