#include "tilecaster/geometry.hpp"

#include <string>

namespace tilecaster {

namespace {

std::string coord_str(TileCoord t) {
  return "(" + std::to_string(t.x) + "," + std::to_string(t.y) + ")";
}

}  // namespace

const char* key_color_name(KeyColor c) {
  switch (c) {
    case KeyColor::Red: return "red";
    case KeyColor::Blue: return "blue";
    case KeyColor::Yellow: return "yellow";
  }
  return "unknown";
}

TileMap::TileMap(int width, int height, std::vector<Cell> cells, std::vector<TileCoord> spawn_candidates,
                 std::vector<TileCoord> goal_candidates, std::vector<EntityInit> entities)
    : width_(width),
      height_(height),
      cells_(std::move(cells)),
      spawns_(std::move(spawn_candidates)),
      goals_(std::move(goal_candidates)),
      entities_(std::move(entities)) {
  if (width_ < 3 || height_ < 3) {
    throw std::invalid_argument("TileMap: width and height must be at least 3");
  }
  if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
    throw std::invalid_argument("TileMap: cell count does not match width*height");
  }
  for (int ty = 0; ty < height_; ++ty) {
    for (int tx = 0; tx < width_; ++tx) {
      const bool border = tx == 0 || ty == 0 || tx == width_ - 1 || ty == height_ - 1;
      Cell& c = cells_[static_cast<std::size_t>(ty) * width_ + tx];
      if (border && c.type != CellType::Wall) {
        throw std::invalid_argument("TileMap: border cell " + coord_str({tx, ty}) + " is not a wall");
      }
      if (c.type == CellType::Door) {
        if (doors_.size() >= kMaxDoors) {
          throw std::invalid_argument("TileMap: more than " + std::to_string(kMaxDoors) + " doors");
        }
        c.door = static_cast<std::int16_t>(doors_.size());
        doors_.push_back({{tx, ty}, c.key_color(), c.locked});
      } else {
        c.door = -1;
        if (c.type != CellType::Wall) c.locked = false;
      }
    }
  }
  auto require_floor = [&](TileCoord t, const char* what) {
    if (t.x <= 0 || t.y <= 0 || t.x >= width_ - 1 || t.y >= height_ - 1) {
      throw std::invalid_argument(std::string("TileMap: ") + what + " " + coord_str(t) + " is outside the interior");
    }
    if ((*this)(t.x, t.y).type != CellType::Floor) {
      throw std::invalid_argument(std::string("TileMap: ") + what + " " + coord_str(t) + " is not a floor cell");
    }
  };
  for (TileCoord t : spawns_) require_floor(t, "spawn candidate");
  for (TileCoord t : goals_) require_floor(t, "goal candidate");
  if (entities_.size() > kMaxEntities) {
    throw std::invalid_argument("TileMap: more than " + std::to_string(kMaxEntities) + " entities");
  }
  for (const EntityInit& e : entities_) require_floor(e.tile, "entity");
}

const Cell& cell_at(const TileMap& map, int tx, int ty) {
  if (!map.in_bounds(tx, ty)) {
    throw ContractViolation("cell_at: " + coord_str({tx, ty}) + " outside " + std::to_string(map.width()) + "x" +
                            std::to_string(map.height()) + " map");
  }
  return map(tx, ty);
}

}  // namespace tilecaster
