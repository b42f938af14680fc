#include "twobridge/obs.hpp"

#include <algorithm>
#include <cmath>

namespace twobridge {

namespace {

constexpr int kRes = kSpatialResolution;

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Maps world coordinates onto a kRes x kRes raster covering a square window.
struct Raster {
  Position origin;
  double pixel;  // world units per pixel

  bool locate(Position p, int& row, int& col) const {
    col = static_cast<int>(std::floor((p.x - origin.x) / pixel));
    row = static_cast<int>(std::floor((p.y - origin.y) / pixel));
    return row >= 0 && row < kRes && col >= 0 && col < kRes;
  }
  Position pixel_center(int row, int col) const {
    return {origin.x + (col + 0.5) * pixel, origin.y + (row + 0.5) * pixel};
  }
};

void raise(std::vector<std::uint8_t>& planes, int channel, int row, int col, std::uint8_t v) {
  auto& cell = planes[channel * SpatialFeatures::plane_size + row * kRes + col];
  cell = std::max(cell, v);
}

}  // namespace

std::vector<float> build_vector(const WorldState& world) {
  std::vector<float> out(vector_length(world.friendly_count, world.enemy_count), 0.0f);
  const double size = world.grid->width();
  const auto& p = world.params;
  std::size_t k = 0;
  for (int i = 0; i < world.friendly_count; ++i, k += kFriendlyFeatures) {
    const UnitState& u = world.friendly(i);
    if (!u.alive) continue;
    out[k + 0] = static_cast<float>(u.pos.x / size);
    out[k + 1] = static_cast<float>(u.pos.y / size);
    out[k + 2] = static_cast<float>(static_cast<double>(u.hp) / p.max_hp);
    out[k + 3] = static_cast<float>(static_cast<double>(u.cooldown) / p.cooldown_ticks);
    out[k + 4] = static_cast<float>(distance(u.pos, world.beacon) / size);
  }
  for (int j = 0; j < world.enemy_count; ++j, k += kEnemyFeatures) {
    const UnitState& u = world.enemy(j);
    if (!u.alive) continue;
    out[k + 0] = static_cast<float>(u.pos.x / size);
    out[k + 1] = static_cast<float>(u.pos.y / size);
    out[k + 2] = static_cast<float>(static_cast<double>(u.hp) / p.max_hp);
    out[k + 3] = static_cast<float>(static_cast<double>(u.cooldown) / p.cooldown_ticks);
  }
  out[k + 0] = static_cast<float>(world.beacon.x / size);
  out[k + 1] = static_cast<float>(world.beacon.y / size);
  out[k + 2] = static_cast<float>(world.elapsed_seconds());
  out[k + 3] = static_cast<float>(world.enemy_alive());
  return out;
}

const std::array<std::string_view, kScreenChannels>& screen_channel_names() {
  static const std::array<std::string_view, kScreenChannels> names{
      "passable", "bridge", "friendly", "enemy", "friendly_hp", "enemy_hp",
      "friendly_cooldown", "enemy_cooldown", "beacon", "selected",
      "reserved_10", "reserved_11", "reserved_12", "reserved_13", "reserved_14", "reserved_15", "reserved_16"};
  return names;
}

const std::array<std::string_view, kMinimapChannels>& minimap_channel_names() {
  static const std::array<std::string_view, kMinimapChannels> names{
      "passable", "friendly", "enemy", "beacon", "camera", "selected", "reserved_6"};
  return names;
}

CameraState update_camera(const CameraState& camera, const WorldState& world) {
  if (camera.mode == CameraMode::Free) return camera;
  Position sum;
  int n = 0;
  for (int i = 0; i < world.friendly_count; ++i) {
    if (!world.friendly(i).alive) continue;
    sum += world.friendly(i).pos;
    ++n;
  }
  CameraState next = camera;
  if (n > 0) next.center = (1.0 / n) * sum;
  return next;
}

SpatialFeatures render_spatial(const WorldState& world, const CameraState& camera, std::uint32_t selected) {
  SpatialFeatures f;
  f.screen.assign(kScreenChannels * SpatialFeatures::plane_size, 0);
  f.minimap.assign(kMinimapChannels * SpatialFeatures::plane_size, 0);
  const TerrainGrid& grid = *world.grid;
  const auto& p = world.params;

  const double half = camera.screen_extent / 2.0;
  const Raster screen{{camera.center.x - half, camera.center.y - half}, camera.screen_extent / kRes};
  const Raster minimap{{0.0, 0.0}, static_cast<double>(grid.width()) / kRes};

  for (int row = 0; row < kRes; ++row) {
    for (int col = 0; col < kRes; ++col) {
      const Position s = screen.pixel_center(row, col);
      if (grid.passable(s)) raise(f.screen, kScreenPassable, row, col, 255);
      if (grid.in_bounds(s) && grid.is_bridge(TerrainGrid::cell_of(s))) raise(f.screen, kScreenBridge, row, col, 255);

      const Position m = minimap.pixel_center(row, col);
      if (grid.passable(m)) raise(f.minimap, kMinimapPassable, row, col, 255);
      if (std::abs(m.x - camera.center.x) < half && std::abs(m.y - camera.center.y) < half) {
        raise(f.minimap, kMinimapCamera, row, col, 255);
      }
    }
  }

  int row = 0;
  int col = 0;
  for (const UnitState& u : world.units) {
    if (!u.alive) continue;
    const bool friendly = u.team == Team::Friendly;
    const bool is_selected = friendly && (selected >> u.id & 1u);
    const std::uint8_t hp = to_byte(static_cast<double>(u.hp) / p.max_hp);
    const std::uint8_t cd = to_byte(static_cast<double>(u.cooldown) / p.cooldown_ticks);
    if (screen.locate(u.pos, row, col)) {
      raise(f.screen, friendly ? kScreenFriendly : kScreenEnemy, row, col, 255);
      raise(f.screen, friendly ? kScreenFriendlyHp : kScreenEnemyHp, row, col, hp);
      raise(f.screen, friendly ? kScreenFriendlyCooldown : kScreenEnemyCooldown, row, col, cd);
      if (is_selected) raise(f.screen, kScreenSelected, row, col, 255);
    }
    if (minimap.locate(u.pos, row, col)) {
      raise(f.minimap, friendly ? kMinimapFriendly : kMinimapEnemy, row, col, 255);
      if (is_selected) raise(f.minimap, kMinimapSelected, row, col, 255);
    }
  }
  if (screen.locate(world.beacon, row, col)) raise(f.screen, kScreenBeacon, row, col, 255);
  if (minimap.locate(world.beacon, row, col)) raise(f.minimap, kMinimapBeacon, row, col, 255);
  return f;
}

}  // namespace twobridge
