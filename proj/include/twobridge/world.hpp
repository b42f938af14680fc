#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twobridge/rng.hpp"
#include "twobridge/types.hpp"

namespace twobridge {

inline constexpr int kMapSize = 64;

enum class Side : std::uint8_t { Left, Right };

enum class RegionId : std::uint8_t { R1 = 1, R2, R3, R4, R5, R6 };
inline constexpr int kNumRegions = 6;

std::string_view to_string(RegionId id);

// Half-open cell rectangle [x0, x1) x [y0, y1).
struct CellRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool contains(Cell c) const { return c.x >= x0 && c.x < x1 && c.y >= y0 && c.y < y1; }
  bool contains(Vec2 p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
  friend bool operator==(const CellRect&, const CellRect&) = default;
};

struct Region {
  RegionId id = RegionId::R1;
  CellRect bounds;
  Side side = Side::Left;

  bool contains(Vec2 p) const { return bounds.contains(p); }
  double diagonal() const { return std::hypot(bounds.width(), bounds.height()); }
};

namespace detail {
struct FieldCache;
}

class TerrainGrid {
 public:
  TerrainGrid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool in_bounds(Vec2 p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x < width_ && p.y < height_; }
  bool passable(Cell c) const { return in_bounds(c) && passable_[index(c)] != 0; }
  bool passable(Vec2 p) const { return in_bounds(p) && passable(cell_of(p)); }

  void set_passable(Cell c, bool value);

  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell_at(int index) const { return {index % width_, index / width_}; }
  static Cell cell_of(Vec2 p) {
    return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
  }

  // Bridge cell sets and the cliff column interval [first, last]; empty for
  // grids not built by build_two_bridge_map.
  const std::vector<std::vector<Cell>>& bridges() const { return bridges_; }
  std::pair<int, int> cliff_columns() const { return cliff_columns_; }
  bool is_bridge(Cell c) const;

  // An 8-connected step from `from` to neighbour `to` is allowed when both
  // cells are passable and, for diagonals, both orthogonal cells are too.
  bool step_allowed(Cell from, Cell to) const;

  // True when every cell touched by the segment a-b is passable.
  bool line_of_sight(Vec2 a, Vec2 b) const;

  // Shortest-path distance (octile metric) from `from` to `to`, or infinity.
  double path_distance(Cell from, Cell to) const;

  // First cell on a shortest path from `from` towards `to`. Absent when
  // from == to or `to` is unreachable. Fields are memoised per target.
  std::optional<Cell> next_hop(Cell from, Cell to) const;

 private:
  friend std::pair<TerrainGrid, std::array<Region, kNumRegions>> build_two_bridge_map();

  const std::vector<float>& field_to(Cell target) const;

  int width_;
  int height_;
  std::vector<std::uint8_t> passable_;
  std::vector<std::vector<Cell>> bridges_;
  std::pair<int, int> cliff_columns_{-1, -1};
  mutable std::shared_ptr<detail::FieldCache> fields_;
};

using Regions = std::array<Region, kNumRegions>;

// 64x64 map, vertical cliff through the middle with two bridges, and the six
// spawn regions (R1-R3 left, R4-R6 right) in id order.
std::pair<TerrainGrid, Regions> build_two_bridge_map();

// Process-wide immutable instance of the standard map.
const std::shared_ptr<const TerrainGrid>& two_bridge_grid();
const Regions& two_bridge_regions();
const Region& region(RegionId id);

// A* over 8-connected passable cells. Returns `from`, then the centres of the
// subsequent cells. Throws PreconditionError when `from` is impassable.
std::optional<std::vector<Position>> find_path(const TerrainGrid& grid, Position from, Position to);

double path_length(const std::vector<Position>& path);

Position sample_point_in_region(const Region& region, Rng& rng);

// One character per cell: '.', '#', 'B' bridge, '1'..'6' region.
std::string dump_map(const TerrainGrid& grid, const Regions& regions);

}  // namespace twobridge
