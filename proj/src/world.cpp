#include "twobridge/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace twobridge {

namespace detail {
struct FieldCache {
  std::shared_mutex mutex;
  std::unordered_map<int, std::unique_ptr<const std::vector<float>>> fields;
};
}  // namespace detail

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Neighbour offsets in ascending cell-index order.
constexpr std::array<std::pair<int, int>, 8> kNeighbours{{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

double step_cost(int dx, int dy) { return (dx != 0 && dy != 0) ? kSqrt2 : 1.0; }

double octile(Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return std::abs(dx - dy) + kSqrt2 * std::min(dx, dy);
}

// Geometry of the standard map, in cells.
constexpr int kCliffFirst = 31;
constexpr int kCliffLast = 32;
constexpr std::array<std::pair<int, int>, 2> kBridgeRows{{{20, 23}, {41, 44}}};

constexpr std::array<int, 3> kRegionRows{4, 26, 48};
constexpr int kRegionSize = 12;
constexpr int kLeftRegionX = 6;
constexpr int kRightRegionX = 46;

}  // namespace

std::string_view to_string(Direction d) {
  static constexpr std::array<std::string_view, kNumDirections> names{
      "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
  return names[static_cast<int>(d)];
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::NavigationVictory: return "navigation_victory";
    case Outcome::CombatVictory: return "combat_victory";
    case Outcome::CombatLoss: return "combat_loss";
    case Outcome::Tie: return "tie";
    case Outcome::TimeoutLoss: return "timeout_loss";
  }
  return "unknown";
}

std::optional<Outcome> parse_outcome(std::string_view s) {
  for (Outcome o : kAllOutcomes) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

std::string_view to_string(ActionErrorCode c) {
  switch (c) {
    case ActionErrorCode::InvalidVerb: return "InvalidVerb";
    case ActionErrorCode::InvalidSelection: return "InvalidSelection";
    case ActionErrorCode::InvalidDirection: return "InvalidDirection";
    case ActionErrorCode::InvalidTarget: return "InvalidTarget";
    case ActionErrorCode::InvalidAction: return "InvalidAction";
  }
  return "Unknown";
}

std::string_view to_string(RegionId id) {
  static constexpr std::array<std::string_view, kNumRegions> names{"R1", "R2", "R3", "R4", "R5", "R6"};
  return names[static_cast<int>(id) - 1];
}

TerrainGrid::TerrainGrid(int width, int height)
    : width_(width),
      height_(height),
      passable_(static_cast<std::size_t>(width) * height, 1),
      fields_(std::make_shared<detail::FieldCache>()) {
  if (width <= 0 || height <= 0) throw PreconditionError("grid dimensions must be positive");
}

void TerrainGrid::set_passable(Cell c, bool value) {
  if (!in_bounds(c)) throw PreconditionError("set_passable: cell out of bounds");
  passable_[index(c)] = value ? 1 : 0;
  // Copies may share the old cache; give this grid a fresh one.
  fields_ = std::make_shared<detail::FieldCache>();
}

bool TerrainGrid::is_bridge(Cell c) const {
  for (const auto& bridge : bridges_) {
    if (std::find(bridge.begin(), bridge.end(), c) != bridge.end()) return true;
  }
  return false;
}

bool TerrainGrid::step_allowed(Cell from, Cell to) const {
  const int dx = to.x - from.x;
  const int dy = to.y - from.y;
  if (std::abs(dx) > 1 || std::abs(dy) > 1 || (dx == 0 && dy == 0)) return false;
  if (!passable(from) || !passable(to)) return false;
  if (dx != 0 && dy != 0) {
    return passable(Cell{from.x + dx, from.y}) && passable(Cell{from.x, from.y + dy});
  }
  return true;
}

bool TerrainGrid::line_of_sight(Vec2 a, Vec2 b) const {
  if (!passable(a) || !passable(b)) return false;
  Cell c = cell_of(a);
  const Cell end = cell_of(b);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  const double t_delta_x = sx != 0 ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = sy != 0 ? 1.0 / std::abs(dy) : kInf;
  double t_max_x = sx > 0 ? (c.x + 1 - a.x) / dx : (sx < 0 ? (a.x - c.x) / -dx : kInf);
  double t_max_y = sy > 0 ? (c.y + 1 - a.y) / dy : (sy < 0 ? (a.y - c.y) / -dy : kInf);

  int guard = std::abs(end.x - c.x) + std::abs(end.y - c.y) + 2;
  while (c != end && guard-- > 0) {
    if (t_max_x < t_max_y) {
      c.x += sx;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      c.y += sy;
      t_max_y += t_delta_y;
    } else {
      // Exact corner crossing touches both orthogonal cells.
      if (!passable(Cell{c.x + sx, c.y}) || !passable(Cell{c.x, c.y + sy})) return false;
      c.x += sx;
      c.y += sy;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (!passable(c)) return false;
  }
  return true;
}

const std::vector<float>& TerrainGrid::field_to(Cell target) const {
  const int key = index(target);
  {
    std::shared_lock lock(fields_->mutex);
    auto it = fields_->fields.find(key);
    if (it != fields_->fields.end()) return *it->second;
  }

  auto field = std::make_unique<std::vector<float>>(cell_count(), std::numeric_limits<float>::infinity());
  if (passable(target)) {
    std::vector<double> dist(cell_count(), kInf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    dist[key] = 0.0;
    open.emplace(0.0, key);
    while (!open.empty()) {
      auto [d, idx] = open.top();
      open.pop();
      if (d > dist[idx]) continue;
      const Cell c = cell_at(idx);
      for (auto [ox, oy] : kNeighbours) {
        const Cell n{c.x + ox, c.y + oy};
        if (!step_allowed(c, n)) continue;
        const double nd = d + step_cost(ox, oy);
        const int nidx = index(n);
        if (nd < dist[nidx]) {
          dist[nidx] = nd;
          open.emplace(nd, nidx);
        }
      }
    }
    for (int i = 0; i < cell_count(); ++i) (*field)[i] = static_cast<float>(dist[i]);
  }

  std::unique_lock lock(fields_->mutex);
  auto [it, inserted] = fields_->fields.try_emplace(key, std::move(field));
  return *it->second;
}

double TerrainGrid::path_distance(Cell from, Cell to) const {
  if (!passable(from) || !passable(to)) return kInf;
  return field_to(to)[index(from)];
}

std::optional<Cell> TerrainGrid::next_hop(Cell from, Cell to) const {
  if (from == to || !passable(from) || !passable(to)) return std::nullopt;
  const auto& field = field_to(to);
  if (!std::isfinite(field[index(from)])) return std::nullopt;
  std::optional<Cell> best;
  double best_cost = kInf;
  for (auto [ox, oy] : kNeighbours) {
    const Cell n{from.x + ox, from.y + oy};
    if (!step_allowed(from, n)) continue;
    const double cost = step_cost(ox, oy) + field[index(n)];
    if (cost < best_cost) {
      best_cost = cost;
      best = n;
    }
  }
  return best;
}

std::pair<TerrainGrid, Regions> build_two_bridge_map() {
  TerrainGrid grid(kMapSize, kMapSize);
  grid.cliff_columns_ = {kCliffFirst, kCliffLast};
  for (int y = 0; y < kMapSize; ++y) {
    for (int x = kCliffFirst; x <= kCliffLast; ++x) {
      grid.passable_[grid.index({x, y})] = 0;
    }
  }
  for (auto [row0, row1] : kBridgeRows) {
    std::vector<Cell> bridge;
    for (int y = row0; y < row1; ++y) {
      for (int x = kCliffFirst; x <= kCliffLast; ++x) {
        grid.passable_[grid.index({x, y})] = 1;
        bridge.push_back({x, y});
      }
    }
    grid.bridges_.push_back(std::move(bridge));
  }

  Regions regions;
  for (int i = 0; i < 3; ++i) {
    const int y0 = kRegionRows[i];
    regions[i] = Region{static_cast<RegionId>(i + 1),
                        {kLeftRegionX, y0, kLeftRegionX + kRegionSize, y0 + kRegionSize},
                        Side::Left};
    regions[i + 3] = Region{static_cast<RegionId>(i + 4),
                            {kRightRegionX, y0, kRightRegionX + kRegionSize, y0 + kRegionSize},
                            Side::Right};
  }
  return {std::move(grid), regions};
}

namespace {
const std::pair<std::shared_ptr<const TerrainGrid>, Regions>& standard_map() {
  static const auto instance = [] {
    auto [grid, regions] = build_two_bridge_map();
    return std::pair{std::make_shared<const TerrainGrid>(std::move(grid)), regions};
  }();
  return instance;
}
}  // namespace

const std::shared_ptr<const TerrainGrid>& two_bridge_grid() { return standard_map().first; }
const Regions& two_bridge_regions() { return standard_map().second; }
const Region& region(RegionId id) { return two_bridge_regions()[static_cast<int>(id) - 1]; }

std::optional<std::vector<Position>> find_path(const TerrainGrid& grid, Position from, Position to) {
  if (!grid.passable(from)) throw PreconditionError("find_path: start position is not passable");
  if (!grid.passable(to)) return std::nullopt;

  const Cell start = TerrainGrid::cell_of(from);
  const Cell goal = TerrainGrid::cell_of(to);
  if (start == goal) return std::vector<Position>{from};

  const int n = grid.cell_count();
  std::vector<double> g(n, kInf);
  std::vector<int> parent(n, -1);
  std::vector<char> closed(n, 0);

  // Ordered by (f, h, cell index).
  using Entry = std::tuple<double, double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const int start_idx = grid.index(start);
  const int goal_idx = grid.index(goal);
  g[start_idx] = 0.0;
  open.emplace(octile(start, goal), octile(start, goal), start_idx);

  while (!open.empty()) {
    const auto [f, h, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == goal_idx) break;
    const Cell c = grid.cell_at(idx);
    for (auto [ox, oy] : kNeighbours) {
      const Cell nb{c.x + ox, c.y + oy};
      if (!grid.step_allowed(c, nb)) continue;
      const int nidx = grid.index(nb);
      if (closed[nidx]) continue;
      const double ng = g[idx] + step_cost(ox, oy);
      if (ng < g[nidx]) {
        g[nidx] = ng;
        parent[nidx] = idx;
        const double nh = octile(nb, goal);
        open.emplace(ng + nh, nh, nidx);
      }
    }
  }
  if (!closed[goal_idx]) return std::nullopt;

  std::vector<int> cells;
  for (int idx = goal_idx; idx != start_idx; idx = parent[idx]) cells.push_back(idx);
  std::reverse(cells.begin(), cells.end());

  std::vector<Position> path;
  path.reserve(cells.size() + 1);
  path.push_back(from);
  for (int idx : cells) path.push_back(center_of(grid.cell_at(idx)));
  return path;
}

double path_length(const std::vector<Position>& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += distance(path[i - 1], path[i]);
  return total;
}

Position sample_point_in_region(const Region& region, Rng& rng) {
  const auto& b = region.bounds;
  const double x = rng.uniform(b.x0, b.x1);
  const double y = rng.uniform(b.y0, b.y1);
  // uniform() is half-open, but guard the rounding edge anyway.
  return {std::min(x, std::nextafter(static_cast<double>(b.x1), 0.0)),
          std::min(y, std::nextafter(static_cast<double>(b.y1), 0.0))};
}

std::string dump_map(const TerrainGrid& grid, const Regions& regions) {
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.height()) * (grid.width() + 1));
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const Cell c{x, y};
      char ch = grid.passable(c) ? '.' : '#';
      if (grid.is_bridge(c)) ch = 'B';
      for (const auto& r : regions) {
        if (r.bounds.contains(c)) ch = static_cast<char>('0' + static_cast<int>(r.id));
      }
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace twobridge
