#pragma once

#include <string>
#include <vector>

#include "twobridge/rng.hpp"
#include "twobridge/world.hpp"

namespace twobridge {

enum class Layout : std::uint8_t { Base, Combat, Navigate };

std::string_view to_string(Layout l);

struct VariantConfig {
  std::string id;
  int friendly_count = 5;
  int enemy_count = 5;
  Layout layout = Layout::Base;

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
};

struct SpawnAssignment {
  RegionId p1_region = RegionId::R1;
  RegionId p2_region = RegionId::R4;
  RegionId beacon_region = RegionId::R5;
  std::vector<Position> friendly_positions;
  std::vector<Position> enemy_positions;
  Position beacon_position;
  Position camera_initial;

  friend bool operator==(const SpawnAssignment&, const SpawnAssignment&) = default;
};

// Nine entries: {V1: 5v3, V2: 5v5, V3: 5v8} x {Base, Combat, Navigate}.
const std::vector<VariantConfig>& variant_catalog();

// Throws ConfigError for an unknown id.
const VariantConfig& find_variant(std::string_view id);

// Draws regions and positions in the trigger order of the given layout.
// Minimum unit separation is 2 * unit_radius.
SpawnAssignment roll_spawns(const VariantConfig& config, Rng& rng, double unit_radius = 0.5);

// Uniform points inside `region`, rejection-sampled so that no two are
// closer than `min_separation`.
std::vector<Position> place_group(const Region& region, int count, double min_separation, Rng& rng);

Position centroid(const std::vector<Position>& points);

}  // namespace twobridge
