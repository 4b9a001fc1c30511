#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "goldens.hpp"
#include "maps.hpp"
#include "oracles.hpp"
#include "tilecaster/renderer.hpp"

namespace tilecaster {
namespace {

using testing::parse_or_throw;

constexpr Rgb kCeil = kPalette[palette::kCeiling];
constexpr Rgb kFloorRgb = kPalette[palette::kFloor];

const TileMap& corridor_4x3() {
  static const TileMap m = parse_or_throw("####\n#S.#\n####");
  return m;
}

TEST(CastRay, AxisAlignedEast) {
  const RayHit h = cast_ray_dda(corridor_4x3(), {}, Vec2(1.5, 1.5), Vec2(1, 0));
  EXPECT_EQ(h.cell, (TileCoord{3, 1}));
  EXPECT_EQ(h.side, HitSide::XFace);
  EXPECT_DOUBLE_EQ(h.perp_distance, 1.5);
  EXPECT_EQ(h.kind, CellType::Wall);
  EXPECT_DOUBLE_EQ(h.wall_u, 0.5);
}

TEST(CastRay, AxisAlignedSouth) {
  const RayHit h = cast_ray_dda(corridor_4x3(), {}, Vec2(1.5, 1.5), Vec2(0, 1));
  EXPECT_EQ(h.cell, (TileCoord{1, 2}));
  EXPECT_EQ(h.side, HitSide::YFace);
  EXPECT_DOUBLE_EQ(h.perp_distance, 0.5);
}

TEST(CastRay, DistanceIsInUnitsOfTheRayDirection) {
  const RayHit h = cast_ray_dda(corridor_4x3(), {}, Vec2(1.5, 1.5), Vec2(4, 0));
  EXPECT_DOUBLE_EQ(h.perp_distance, 1.5 / 4);
}

TEST(CastRay, DiagonalMatchesMarchingOracleInRandomMaps) {
  RngState rng = split(31, 0);
  const Vec2 dir = Vec2(1, 1) / std::sqrt(2.0);
  for (int trial = 0; trial < 50; ++trial) {
    TileMap raw = testing::random_map(rng, 16, 16, {0.2, 0.05});
    std::vector<Cell> cells(raw.cells().begin(), raw.cells().end());
    cells[16 + 1] = Cell::floor();
    const TileMap m(16, 16, cells, {}, {}, {});
    const DoorFlags open = testing::random_door_flags(rng, m);
    const RayHit h = cast_ray_dda(m, open, Vec2(1.5, 1.5), dir);
    const testing::MarchHit o = testing::march_oracle(m, open, Vec2(1.5, 1.5), dir);
    EXPECT_EQ(h.cell, o.cell) << "trial " << trial;
    EXPECT_NEAR(h.perp_distance, o.t, 1e-6) << "trial " << trial;
  }
}

TEST(CastRay, ClosedDoorStopsTheRayAndOpenDoorPassesIt) {
  const TileMap m = parse_or_throw("######\n#S.R.#\n######");
  DoorFlags open;
  RayHit h = cast_ray_dda(m, open, Vec2(1.5, 1.5), Vec2(1, 0));
  EXPECT_EQ(h.cell, (TileCoord{3, 1}));
  EXPECT_EQ(h.kind, CellType::Door);
  EXPECT_EQ(h.color_id, static_cast<int>(KeyColor::Red));
  open.set(0);
  h = cast_ray_dda(m, open, Vec2(1.5, 1.5), Vec2(1, 0));
  EXPECT_EQ(h.cell, (TileCoord{5, 1}));
  EXPECT_EQ(h.kind, CellType::Wall);
}

TEST(CastRay, ReportsWallColor) {
  const TileMap m = parse_or_throw("#####\n#S.7#\n#####");
  EXPECT_EQ(cast_ray_dda(m, {}, Vec2(1.5, 1.5), Vec2(1, 0)).color_id, 7);
}

TEST(CastRay, RejectsBadInputs) {
  EXPECT_THROW(cast_ray_dda(corridor_4x3(), {}, Vec2(1.5, 1.5), Vec2(0, 0)), ContractViolation);
  EXPECT_THROW(cast_ray_dda(corridor_4x3(), {}, Vec2(0.5, 0.5), Vec2(1, 0)), ContractViolation);
  EXPECT_THROW(cast_ray_dda(corridor_4x3(), {}, Vec2(-3, 1.5), Vec2(1, 0)), ContractViolation);
  EXPECT_THROW(cast_ray_dda(corridor_4x3(), {}, Vec2(1.5, 1.5), Vec2(NAN, 1)), ContractViolation);
}

TEST(CastRay, StepsStayWithinBound) {
  RngState rng = split(32, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int w = 3 + static_cast<int>(uniform_index(rng, 30));
    const int h = 3 + static_cast<int>(uniform_index(rng, 30));
    const TileMap m = testing::random_map(rng, w, h, {0.05, 0.0});
    const Vec2 o = testing::dyadic_point_in(rng, testing::random_floor_tile(rng, m));
    const RayHit hit = cast_ray_dda(m, {}, o, testing::random_unit(rng));
    EXPECT_LE(hit.boundary_steps, dda_step_bound(m));
    EXPECT_GE(hit.boundary_steps, 1);
    EXPECT_GT(hit.perp_distance, 0.0);
    EXPECT_GE(hit.wall_u, 0.0);
    EXPECT_LT(hit.wall_u, 1.0);
  }
}

TEST(Palette, LookupsAreFrozen) {
  EXPECT_EQ(wall_rgb(0), (Rgb{136, 136, 136}));
  EXPECT_EQ(wall_rgb(5), kPalette[5]);
  EXPECT_EQ(wall_rgb(10), kGeneratedWallColors[0]);
  EXPECT_EQ(wall_rgb(23), kGeneratedWallColors[13]);
  EXPECT_EQ(key_rgb(KeyColor::Red), kPalette[palette::kRed]);
  EXPECT_EQ(key_rgb(KeyColor::Blue), kPalette[palette::kBlue]);
  EXPECT_EQ(key_rgb(KeyColor::Yellow), kPalette[palette::kYellow]);
}

TEST(CameraX, EdgesAndAntisymmetry) {
  EXPECT_EQ(camera_x(0, 64), -1.0);
  EXPECT_EQ(camera_x(63, 64), 1.0);
  for (int c = 0; c < 64; ++c) EXPECT_EQ(camera_x(c, 64), -camera_x(63 - c, 64));
  EXPECT_EQ(camera_x(4, 9), 0.0);
}

const TileMap& room_5x5() {
  static const TileMap m = parse_or_throw("#####\n#...#\n#.S.#\n#...#\n#####");
  return m;
}

TEST(RenderFrame, FlatWallAtDistanceOneFillsTheCenterColumn) {
  const Pose pose = make_pose(Vec2(3.0, 2.5), Vec2(1, 0));
  const Frame f = render_frame(room_5x5(), {}, pose, 64, 64);
  const Rgb wall = f.pixel(32, 32);
  EXPECT_NE(wall, kCeil);
  EXPECT_NE(wall, kFloorRgb);
  for (int c : {31, 32}) {
    for (int y = 0; y < 64; ++y) EXPECT_EQ(f.pixel(c, y), wall) << "column " << c << " row " << y;
  }
}

TEST(RenderFrame, FarWallLeavesCeilingAndFloor) {
  const Pose pose = make_pose(Vec2(1.5, 2.5), Vec2(1, 0));
  const Frame f = render_frame(room_5x5(), {}, pose, 64, 64);
  // Perpendicular distance 2.5 gives a slice of 64 / 2.5 = 25.6 rows.
  EXPECT_EQ(f.pixel(32, 0), kCeil);
  EXPECT_EQ(f.pixel(32, 63), kFloorRgb);
  int wall_rows = 0;
  for (int y = 0; y < 64; ++y) wall_rows += f.pixel(32, y) != kCeil && f.pixel(32, y) != kFloorRgb;
  EXPECT_EQ(wall_rows, 26);
}

TEST(RenderFrame, DefaultResolutionByteCount) {
  const Frame f = render_frame(room_5x5(), {}, make_pose(Vec2(2.5, 2.5), Vec2(0, 1)), 64, 64);
  EXPECT_EQ(f.pixels.size(), 12288u);
  EXPECT_EQ(frame_bytes(64, 64), 12288u);
}

TEST(RenderFrame, RejectsTinyFrames) {
  const Pose pose = make_pose(Vec2(2.5, 2.5), Vec2(0, 1));
  EXPECT_THROW(render_frame(room_5x5(), {}, pose, 7, 64), ContractViolation);
  EXPECT_THROW(render_frame(room_5x5(), {}, pose, 64, 4), ContractViolation);
  std::vector<std::uint8_t> small(10);
  EXPECT_THROW(render_into(small, room_5x5(), {}, pose, 8, 8), ContractViolation);
}

TEST(RenderFrame, WritesEveryByte) {
  RngState rng = split(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const TileMap m = testing::random_map(rng, 12, 12);
    const DoorFlags open = testing::random_door_flags(rng, m);
    const Pose pose =
        make_pose(testing::dyadic_point_in(rng, testing::random_floor_tile(rng, m, open)), testing::random_unit(rng));
    const std::vector<Sprite> sprites{{Vec2(5.5, 5.5), SpriteKind::Key, KeyColor::Blue, true}};
    const WorldView world{open, sprites};
    std::vector<std::uint8_t> a(frame_bytes(40, 30), 0x00);
    std::vector<std::uint8_t> b(frame_bytes(40, 30), 0xff);
    render_into(a, m, world, pose, 40, 30);
    render_into(b, m, world, pose, 40, 30);
    EXPECT_EQ(a, b);
  }
}

TEST(RenderFrame, ZBufferHoldsEachColumnsWallDistance) {
  RngState rng = split(34, 0);
  const TileMap m = testing::random_map(rng, 12, 12);
  const Pose pose = make_pose(testing::dyadic_point_in(rng, testing::random_floor_tile(rng, m)), Vec2(0.6, 0.8));
  ZBuffer z;
  std::vector<std::uint8_t> out(frame_bytes(48, 32));
  render_into(out, m, {}, pose, 48, 32, &z);
  ASSERT_EQ(z.size(), 48u);
  for (int c = 0; c < 48; ++c) {
    const Vec2 ray = pose.direction + pose.camera_plane * camera_x(c, 48);
    EXPECT_EQ(z[static_cast<std::size_t>(c)], cast_ray_dda(m, {}, pose.position, ray).perp_distance);
  }
}

TEST(RenderFrame, WallsFadeWithDistance) {
  const TileMap m = parse_or_throw("##########\n#S.......#\n##########");
  const Rgb near = render_frame(m, {}, make_pose(Vec2(7.5, 1.5), Vec2(1, 0)), 16, 16).pixel(8, 8);
  const Rgb far = render_frame(m, {}, make_pose(Vec2(1.5, 1.5), Vec2(1, 0)), 16, 16).pixel(8, 8);
  EXPECT_GT(near.r, far.r);
}

TEST(RenderFrame, UnlockedDoorsAreLighterThanLockedOnes) {
  const TileMap locked = parse_or_throw("#####\n#S.B#\n#####");
  const TileMap unlocked = parse_or_throw("#####\n#S.\"#\n#####");
  const Pose pose = make_pose(Vec2(1.5, 1.5), Vec2(1, 0));
  const Rgb a = render_frame(locked, {}, pose, 16, 16).pixel(8, 8);
  const Rgb b = render_frame(unlocked, {}, pose, 16, 16).pixel(8, 8);
  EXPECT_GT(b.r + b.g, a.r + a.g);
}

TEST(Sprites, VisibleSpriteDrawsAndHiddenOneDoesNot) {
  const Pose pose = make_pose(Vec2(1.5, 2.5), Vec2(1, 0));
  const Frame bare = render_frame(room_5x5(), {}, pose, 64, 64);
  std::vector<Sprite> sprites{{Vec2(2.5, 2.5), SpriteKind::Goal, KeyColor::Red, true}};
  const Frame with = render_frame(room_5x5(), {{}, sprites}, pose, 64, 64);
  EXPECT_NE(with, bare);
  int goal_pixels = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) goal_pixels += with.pixel(x, y) == kPalette[palette::kGoal];
  }
  EXPECT_GT(goal_pixels, 100);
  sprites[0].visible = false;
  EXPECT_EQ(render_frame(room_5x5(), {{}, sprites}, pose, 64, 64), bare);
}

TEST(Sprites, BehindAWallContributesNothing) {
  const TileMap m = parse_or_throw("#######\n#S.#..#\n#######");
  const Pose pose = make_pose(Vec2(1.5, 1.5), Vec2(1, 0));
  const Frame bare = render_frame(m, {}, pose, 64, 64);
  for (SpriteKind k : {SpriteKind::Key, SpriteKind::Goal, SpriteKind::Medkit}) {
    const std::vector<Sprite> sprites{{Vec2(4.5, 1.5), k, KeyColor::Yellow, true}};
    EXPECT_EQ(render_frame(m, {{}, sprites}, pose, 64, 64), bare);
  }
}

TEST(Sprites, BehindTheCameraContributesNothing) {
  const Pose pose = make_pose(Vec2(2.5, 2.5), Vec2(1, 0));
  const std::vector<Sprite> sprites{{Vec2(1.5, 2.5), SpriteKind::Medkit, KeyColor::Red, true}};
  EXPECT_EQ(render_frame(room_5x5(), {{}, sprites}, pose, 32, 32), render_frame(room_5x5(), {}, pose, 32, 32));
}

TEST(Sprites, NearerSpriteIsDrawnOverFartherOne) {
  const TileMap m = parse_or_throw("########\n#S.....#\n########");
  const Pose pose = make_pose(Vec2(1.5, 1.5), Vec2(1, 0));
  const std::vector<Sprite> order_a{{Vec2(3.5, 1.5), SpriteKind::Goal, KeyColor::Red, true},
                                    {Vec2(5.5, 1.5), SpriteKind::Medkit, KeyColor::Red, true}};
  const std::vector<Sprite> order_b{order_a[1], order_a[0]};
  const Frame a = render_frame(m, {{}, order_a}, pose, 64, 64);
  EXPECT_EQ(a, render_frame(m, {{}, order_b}, pose, 64, 64));
  // Both glyphs cover this pixel; the goal is nearer.
  EXPECT_EQ(a.pixel(32, 37), kPalette[palette::kGoal]);
  const std::vector<Sprite> medkit_only{order_a[1]};
  EXPECT_EQ(render_frame(m, {{}, medkit_only}, pose, 64, 64).pixel(32, 37), kPalette[palette::kRed]);
}

TEST(Symmetry, MirroredWorldRendersMirroredFrame) {
  RngState rng = split(35, 0);
  for (int trial = 0; trial < 25; ++trial) EXPECT_EQ(testing::mirror_trial(rng), 0) << "trial " << trial;
}

TEST(Symmetry, QuarterTurnInRotationallySymmetricMap) {
  RngState rng = split(36, 0);
  for (int trial = 0; trial < 25; ++trial) EXPECT_EQ(testing::rotation_trial(rng), 0) << "trial " << trial;
}

}  // namespace
}  // namespace tilecaster
