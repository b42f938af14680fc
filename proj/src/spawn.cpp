#include "twobridge/spawn.hpp"

#include <algorithm>

#include "twobridge/types.hpp"

namespace twobridge {

namespace {

constexpr int kPlacementTries = 256;

RegionId pick(Rng& rng, std::initializer_list<RegionId> from) {
  return *(from.begin() + rng.index(static_cast<int>(from.size())));
}

RegionId pick_left(Rng& rng) { return pick(rng, {RegionId::R1, RegionId::R2, RegionId::R3}); }
RegionId pick_right(Rng& rng) { return pick(rng, {RegionId::R4, RegionId::R5, RegionId::R6}); }

RegionId pick_right_except(Rng& rng, RegionId taken) {
  std::array<RegionId, 2> rest{};
  int n = 0;
  for (RegionId r : {RegionId::R4, RegionId::R5, RegionId::R6}) {
    if (r != taken) rest[n++] = r;
  }
  return rest[rng.index(2)];
}

}  // namespace

std::string_view to_string(Layout l) {
  switch (l) {
    case Layout::Base: return "Base";
    case Layout::Combat: return "Combat";
    case Layout::Navigate: return "Navigate";
  }
  return "?";
}

const std::vector<VariantConfig>& variant_catalog() {
  static const std::vector<VariantConfig> catalog = [] {
    std::vector<VariantConfig> out;
    constexpr std::array<int, 3> enemy_counts{3, 5, 8};
    for (int balance = 0; balance < 3; ++balance) {
      for (Layout layout : {Layout::Base, Layout::Combat, Layout::Navigate}) {
        out.push_back({"V" + std::to_string(balance + 1) + "_" + std::string(to_string(layout)), 5,
                       enemy_counts[balance], layout});
      }
    }
    return out;
  }();
  return catalog;
}

const VariantConfig& find_variant(std::string_view id) {
  for (const auto& v : variant_catalog()) {
    if (v.id == id) return v;
  }
  throw ConfigError("unknown variant id '" + std::string(id) + "'");
}

std::vector<Position> place_group(const Region& region, int count, double min_separation, Rng& rng) {
  std::vector<Position> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Position candidate;
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
      candidate = sample_point_in_region(region, rng);
      const bool clear = std::all_of(out.begin(), out.end(), [&](Position p) {
        return distance(p, candidate) >= min_separation;
      });
      if (clear) break;
    }
    out.push_back(candidate);
  }
  return out;
}

Position centroid(const std::vector<Position>& points) {
  Position sum;
  for (Position p : points) sum += p;
  if (points.empty()) return sum;
  return (1.0 / static_cast<double>(points.size())) * sum;
}

SpawnAssignment roll_spawns(const VariantConfig& config, Rng& rng, double unit_radius) {
  const double sep = 2.0 * unit_radius;
  SpawnAssignment s;
  auto spawn_friendly = [&] {
    s.friendly_positions = place_group(region(s.p1_region), config.friendly_count, sep, rng);
    s.camera_initial = centroid(s.friendly_positions);
  };
  auto spawn_enemy = [&] {
    s.enemy_positions = place_group(region(s.p2_region), config.enemy_count, sep, rng);
  };
  auto spawn_beacon = [&] { s.beacon_position = sample_point_in_region(region(s.beacon_region), rng); };

  switch (config.layout) {
    case Layout::Base:
      s.p1_region = pick_left(rng);
      spawn_friendly();
      s.beacon_region = pick_right(rng);
      spawn_beacon();
      s.p2_region = pick_right_except(rng, s.beacon_region);
      spawn_enemy();
      break;
    case Layout::Combat:
      s.beacon_region = pick_left(rng);
      spawn_beacon();
      s.p1_region = pick_right(rng);
      spawn_friendly();
      s.p2_region = pick_right_except(rng, s.p1_region);
      spawn_enemy();
      break;
    case Layout::Navigate:
      s.p2_region = pick_left(rng);
      spawn_enemy();
      s.p1_region = pick_right(rng);
      spawn_friendly();
      s.beacon_region = pick_right_except(rng, s.p1_region);
      spawn_beacon();
      break;
  }
  return s;
}

}  // namespace twobridge
