#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "twobridge/engine.hpp"

namespace twobridge {

// Layout, all slots in id order, dead slots zero-filled:
//   friendly slot i (5 floats): x, y, hp, cooldown, dist_to_beacon
//   enemy slot j (4 floats):    x, y, hp, cooldown
//   beacon x, beacon y, elapsed seconds, enemies remaining
// Coordinates and distances are divided by the map size, hp by max_hp and
// cooldown by cooldown_ticks. Elapsed time and the enemy count are raw.
inline constexpr int kFriendlyFeatures = 5;
inline constexpr int kEnemyFeatures = 4;
inline constexpr int kGlobalFeatures = 4;

inline int vector_length(int friendly_count, int enemy_count) {
  return kFriendlyFeatures * friendly_count + kEnemyFeatures * enemy_count + kGlobalFeatures;
}

std::vector<float> build_vector(const WorldState& world);

inline constexpr int kScreenChannels = 17;
inline constexpr int kMinimapChannels = 7;
inline constexpr int kSpatialResolution = 64;
inline constexpr double kScreenExtent = 24.0;

enum ScreenChannel : int {
  kScreenPassable,
  kScreenBridge,
  kScreenFriendly,
  kScreenEnemy,
  kScreenFriendlyHp,
  kScreenEnemyHp,
  kScreenFriendlyCooldown,
  kScreenEnemyCooldown,
  kScreenBeacon,
  kScreenSelected,
  kScreenUsedChannels,  // the rest are reserved zero planes
};

enum MinimapChannel : int {
  kMinimapPassable,
  kMinimapFriendly,
  kMinimapEnemy,
  kMinimapBeacon,
  kMinimapCamera,
  kMinimapSelected,
  kMinimapUsedChannels,
};

const std::array<std::string_view, kScreenChannels>& screen_channel_names();
const std::array<std::string_view, kMinimapChannels>& minimap_channel_names();

// Channel-first, row-major planes, one byte per cell (0..255 for [0, 1]).
struct SpatialFeatures {
  std::vector<std::uint8_t> screen;
  std::vector<std::uint8_t> minimap;

  static constexpr std::size_t plane_size = kSpatialResolution * kSpatialResolution;

  std::uint8_t screen_at(int channel, int row, int col) const {
    return screen[channel * plane_size + row * kSpatialResolution + col];
  }
  std::uint8_t minimap_at(int channel, int row, int col) const {
    return minimap[channel * plane_size + row * kSpatialResolution + col];
  }

  friend bool operator==(const SpatialFeatures&, const SpatialFeatures&) = default;
};

enum class CameraMode : std::uint8_t { Free, Locked };

struct CameraState {
  CameraMode mode = CameraMode::Free;
  Position center;
  double screen_extent = kScreenExtent;

  friend bool operator==(const CameraState&, const CameraState&) = default;
};

// Locked: centroid of alive friendlies (unchanged if none). Free: unchanged.
CameraState update_camera(const CameraState& camera, const WorldState& world);

// `selected` is the bitmask of friendly slots chosen by the last action.
SpatialFeatures render_spatial(const WorldState& world, const CameraState& camera, std::uint32_t selected = 0);

}  // namespace twobridge
