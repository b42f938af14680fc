#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace twobridge;

namespace {

WorldState sample_world() {
  return make_world(two_bridge_grid(), {{10.5, 12.25}, {20.0, 40.0}, {5.5, 5.5}}, {{50.25, 8.75}, {40.5, 60.5}},
                    {48.0, 16.0});
}

int count_nonzero(const std::vector<std::uint8_t>& planes, int channel) {
  int n = 0;
  for (std::size_t i = 0; i < SpatialFeatures::plane_size; ++i) n += planes[channel * SpatialFeatures::plane_size + i] != 0;
  return n;
}

}  // namespace

TEST_CASE("vector length per variant") {
  CHECK(vector_length(5, 3) == 41);
  CHECK(vector_length(5, 5) == 49);
  CHECK(vector_length(5, 8) == 61);
  for (const auto& v : variant_catalog()) {
    Rng rng(0);
    const WorldState w = make_world(two_bridge_grid(), roll_spawns(v, rng));
    CHECK(build_vector(w).size() == static_cast<std::size_t>(vector_length(v.friendly_count, v.enemy_count)));
  }
}

TEST_CASE("vector values and layout") {
  WorldState w = sample_world();
  w.friendly(0).hp = 30;
  w.friendly(0).cooldown = 7;
  w.friendly(2).alive = false;
  w.friendly(2).hp = 0;
  w.enemy(1).hp = 9;
  w.tick = 40;
  const auto v = build_vector(w);
  REQUIRE(v.size() == 3 * 5 + 2 * 4 + 4);

  CHECK(v[0] == doctest::Approx(10.5 / 64));
  CHECK(v[1] == doctest::Approx(12.25 / 64));
  CHECK(v[2] == doctest::Approx(30.0 / 45));
  CHECK(v[3] == doctest::Approx(7.0 / 14));
  CHECK(v[4] == doctest::Approx(std::hypot(48.0 - 10.5, 16.0 - 12.25) / 64).epsilon(1e-6));
  CHECK(v[5] == doctest::Approx(20.0 / 64));
  for (int k = 10; k < 15; ++k) CHECK(v[k] == 0.0f);  // dead slot
  CHECK(v[15] == doctest::Approx(50.25 / 64));
  CHECK(v[16] == doctest::Approx(8.75 / 64));
  CHECK(v[17] == doctest::Approx(1.0));
  CHECK(v[18] == 0.0f);
  CHECK(v[21] == doctest::Approx(9.0 / 45));
  CHECK(v[23] == doctest::Approx(48.0 / 64));
  CHECK(v[24] == doctest::Approx(16.0 / 64));
  CHECK(v[25] == doctest::Approx(2.5));  // 40 ticks at 16 per second
  CHECK(v[26] == 2.0f);
}

TEST_CASE("channel names and counts") {
  CHECK(screen_channel_names().size() == 17);
  CHECK(minimap_channel_names().size() == 7);
  CHECK(screen_channel_names()[kScreenFriendly] == "friendly");
  CHECK(minimap_channel_names()[kMinimapCamera] == "camera");
}

TEST_CASE("minimap is one pixel per cell") {
  const WorldState w = sample_world();
  const CameraState cam{CameraMode::Free, {32.0, 32.0}, kScreenExtent};
  const SpatialFeatures f = render_spatial(w, cam, 0b001);
  REQUIRE(f.screen.size() == 17u * 64 * 64);
  REQUIRE(f.minimap.size() == 7u * 64 * 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      CHECK((f.minimap_at(kMinimapPassable, y, x) == 255) == oracle::expected_passable(x, y));
    }
  }
  CHECK(f.minimap_at(kMinimapFriendly, 12, 10) == 255);
  CHECK(f.minimap_at(kMinimapFriendly, 40, 20) == 255);
  CHECK(f.minimap_at(kMinimapEnemy, 8, 50) == 255);
  CHECK(f.minimap_at(kMinimapBeacon, 16, 48) == 255);
  CHECK(count_nonzero(f.minimap, kMinimapFriendly) == 3);
  CHECK(count_nonzero(f.minimap, kMinimapSelected) == 1);
  CHECK(f.minimap_at(kMinimapSelected, 12, 10) == 255);
  // Camera window: 24 x 24 cells around (32, 32).
  CHECK(count_nonzero(f.minimap, kMinimapCamera) == 24 * 24);
  CHECK(f.minimap_at(kMinimapCamera, 20, 20) == 255);
  CHECK(f.minimap_at(kMinimapCamera, 19, 20) == 0);
  CHECK(count_nonzero(f.minimap, 6) == 0);
}

TEST_CASE("screen window follows the camera") {
  WorldState w = sample_world();
  w.friendly(0).hp = 45;
  const CameraState cam{CameraMode::Free, w.friendly(0).pos, kScreenExtent};
  const SpatialFeatures f = render_spatial(w, cam, 0);
  // The camera centre lands on pixel (32, 32) at 24 / 64 units per pixel.
  CHECK(f.screen_at(kScreenFriendly, 32, 32) == 255);
  CHECK(f.screen_at(kScreenFriendlyHp, 32, 32) == 255);
  CHECK(f.screen_at(kScreenFriendlyCooldown, 32, 32) == 0);
  CHECK(f.screen_at(kScreenFriendly, 14, 18) == 255);   // the unit at (5.5, 5.5)
  CHECK(count_nonzero(f.screen, kScreenFriendly) == 2);  // (20, 40) is off screen
  CHECK(count_nonzero(f.screen, kScreenEnemy) == 0);
  CHECK(count_nonzero(f.screen, kScreenSelected) == 0);
  // The window starts at x = -1.5, so four pixel columns are off the map.
  CHECK(count_nonzero(f.screen, kScreenPassable) == 64 * 60);
  CHECK(count_nonzero(f.screen, kScreenBridge) == 0);
  for (int c = kScreenUsedChannels; c < kScreenChannels; ++c) CHECK(count_nonzero(f.screen, c) == 0);

  // Looking at the cliff: pixels over the cliff columns are blocked, and the
  // bridge rows show up in the bridge plane.
  const CameraState cliff{CameraMode::Free, {32.0, 21.5}, kScreenExtent};
  const SpatialFeatures g = render_spatial(w, cliff, 0);
  const double pixel = kScreenExtent / 64;
  int blocked = 0, bridge = 0;
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      const Position p{32.0 - 12.0 + (c + 0.5) * pixel, 21.5 - 12.0 + (r + 0.5) * pixel};
      const bool open = oracle::expected_passable(static_cast<int>(p.x), static_cast<int>(p.y));
      CHECK((g.screen_at(kScreenPassable, r, c) == 255) == open);
      blocked += !open;
      bridge += g.screen_at(kScreenBridge, r, c) == 255;
    }
  }
  CHECK(blocked > 0);
  CHECK(bridge > 0);
}

TEST_CASE("hp and cooldown heat scale to bytes") {
  WorldState w = sample_world();
  w.enemy(0).hp = 15;
  w.enemy(0).cooldown = 7;
  const CameraState cam{CameraMode::Free, w.enemy(0).pos, kScreenExtent};
  const SpatialFeatures f = render_spatial(w, cam, 0);
  CHECK(f.screen_at(kScreenEnemyHp, 32, 32) == 85);        // 15/45 * 255
  CHECK(f.screen_at(kScreenEnemyCooldown, 32, 32) == 128);  // 7/14 * 255 = 127.5
}

TEST_CASE("camera modes") {
  WorldState w = sample_world();
  const CameraState free{CameraMode::Free, {1.0, 2.0}, kScreenExtent};
  CHECK(update_camera(free, w) == free);

  const CameraState locked{CameraMode::Locked, {1.0, 2.0}, kScreenExtent};
  const CameraState next = update_camera(locked, w);
  CHECK(next.center.x == doctest::Approx((10.5 + 20.0 + 5.5) / 3));
  CHECK(next.center.y == doctest::Approx((12.25 + 40.0 + 5.5) / 3));

  w.friendly(1).alive = false;
  const CameraState two = update_camera(locked, w);
  CHECK(two.center.x == doctest::Approx((10.5 + 5.5) / 2));

  for (int i = 0; i < w.friendly_count; ++i) w.friendly(i).alive = false;
  CHECK(update_camera(next, w).center == next.center);
}
