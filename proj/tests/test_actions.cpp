#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace twobridge;

namespace {

WorldState fresh(const char* variant = "V2_Base", std::uint64_t seed = 0) {
  Rng rng(seed);
  return make_world(two_bridge_grid(), roll_spawns(find_variant(variant), rng));
}

void kill(UnitState& u) {
  u.alive = false;
  u.hp = 0;
}

ActionErrorCode code_of(const StructuredAction& a, const ActionMask& m, const WorldState& w) {
  try {
    decode_structured(a, m, w);
  } catch (const ActionError& e) {
    return e.code();
  }
  FAIL("expected an ActionError");
  return ActionErrorCode::InvalidAction;
}

StructuredAction random_action(Rng& rng, int friendly, int enemy) {
  StructuredAction a;
  a.verb = static_cast<Verb>(rng.index(3));
  a.who = static_cast<std::uint32_t>(rng.below(1u << (friendly + 1)));  // one bit past the slots
  a.direction = static_cast<Direction>(rng.index(8));
  const int t = rng.index(enemy + 3) - 1;  // -1 .. enemy+1
  if (t != enemy) a.enemy_idx = t;
  return a;
}

}  // namespace

TEST_CASE("verb mask") {
  WorldState w = fresh();
  CHECK(verb_mask(w) == std::array{true, true, true});
  for (int j = 0; j < w.enemy_count; ++j) kill(w.enemy(j));
  CHECK(verb_mask(w) == std::array{true, true, false});
  w.outcome = Outcome::CombatVictory;
  CHECK(verb_mask(w) == std::array{true, false, false});
}

TEST_CASE("branch mask follows alive units and keeps the null target") {
  WorldState w = fresh();
  kill(w.enemy(2));
  kill(w.friendly(1));
  const ActionMask m = branch_mask(w);
  CHECK(m.who == std::vector<bool>{true, false, true, true, true});
  CHECK(m.enemy == std::vector<bool>{true, true, false, true, true, true});
  CHECK(m.direction == std::array<bool, 8>{true, true, true, true, true, true, true, true});

  for (int i = 0; i < w.friendly_count; ++i) kill(w.friendly(i));
  const ActionMask none = branch_mask(w);
  CHECK(none.who == std::vector<bool>(5, false));
  CHECK(none.verb == std::array{true, false, true});
}

TEST_CASE("unit pinned in a pocket: only escape directions") {
  // Two open cells side by side, everything else walled; the unit touches
  // the north wall.
  auto g = std::make_shared<TerrainGrid>(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) g->set_passable({x, y}, false);
  }
  g->set_passable({3, 3}, true);
  g->set_passable({4, 3}, true);
  WorldState w = make_world(g, {{3.95, 3.05}}, {{4.5, 3.5}}, {4.5, 3.5});
  w.outcome.reset();
  const ActionMask m = branch_mask(w);
  const CombatParams p;
  for (int d = 0; d < kNumDirections; ++d) {
    // Per-direction oracle: the step lands in an open cell.
    const Vec2 to = w.friendly(0).pos + p.move_speed * unit_vector(static_cast<Direction>(d));
    CAPTURE(d);
    CHECK(m.direction[d] == g->passable(to));
  }
  CHECK(m.direction[static_cast<int>(Direction::E)]);
  CHECK_FALSE(m.direction[static_cast<int>(Direction::N)]);
  CHECK_FALSE(m.direction[static_cast<int>(Direction::NE)]);
  CHECK_FALSE(m.direction[static_cast<int>(Direction::NW)]);
}

TEST_CASE("a legal verb always has a legal completion") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const WorldState w = oracle::random_world(seed, static_cast<int>(seed % 60));
    const ActionMask m = branch_mask(w);
    CHECK(m.verb[0]);
    const auto any = [](const auto& flags) {
      for (bool b : flags) {
        if (b) return true;
      }
      return false;
    };
    if (m.verb[1]) {
      CHECK(any(m.who));
      CHECK(any(m.direction));
    }
    if (m.verb[2]) {
      CHECK(any(m.who));
      CHECK(any(m.enemy));
    }
  }
}

TEST_CASE("decode: broadcast, null target, errors") {
  WorldState w = fresh();
  const ActionMask m = branch_mask(w);

  const Orders move = decode_structured({Verb::Move, 0b11111, Direction::E, std::nullopt}, m, w);
  for (const Order& o : move) CHECK(o == Order::move(Direction::E));

  const Orders hold = decode_structured({Verb::Attack, 0b00001, Direction::N, std::nullopt}, m, w);
  for (const Order& o : hold) CHECK(o.kind == OrderKind::NoOp);

  const Orders attack = decode_structured({Verb::Attack, 0b00101, Direction::N, 3}, m, w);
  CHECK(attack[0] == Order::attack(w.enemy_unit_id(3)));
  CHECK(attack[1].kind == OrderKind::NoOp);
  CHECK(attack[2] == Order::attack(w.enemy_unit_id(3)));

  kill(w.enemy(2));
  const ActionMask m2 = branch_mask(w);
  CHECK(code_of({Verb::Attack, 0b00001, Direction::N, 2}, m2, w) == ActionErrorCode::InvalidTarget);
  CHECK(code_of({Verb::Attack, 0b00001, Direction::N, 7}, m2, w) == ActionErrorCode::InvalidTarget);
  CHECK(code_of({Verb::Move, 0, Direction::N, std::nullopt}, m2, w) == ActionErrorCode::InvalidSelection);
  CHECK(code_of({Verb::Move, 0b100000, Direction::N, std::nullopt}, m2, w) == ActionErrorCode::InvalidSelection);

  // Under the verb-only mask a selection of dead units is still rejected.
  kill(w.friendly(0));
  CHECK(code_of({Verb::Move, 0b00001, Direction::N, std::nullopt}, verb_only_mask(w), w) ==
        ActionErrorCode::InvalidSelection);

  for (int j = 0; j < w.enemy_count; ++j) kill(w.enemy(j));
  CHECK(code_of({Verb::Attack, 0b00010, Direction::N, std::nullopt}, branch_mask(w), w) ==
        ActionErrorCode::InvalidVerb);
}

TEST_CASE("masked direction is rejected") {
  WorldState w = make_world(two_bridge_grid(), {{30.95, 10.5}}, {{50.5, 50.5}}, {60.5, 60.5});
  ActionMask m = branch_mask(w);
  REQUIRE_FALSE(m.direction[static_cast<int>(Direction::E)]);
  CHECK(code_of({Verb::Move, 1, Direction::E, std::nullopt}, m, w) == ActionErrorCode::InvalidDirection);
}

TEST_CASE("enumeration matches a brute-force count") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const WorldState w = oracle::random_world(seed, static_cast<int>(seed % 50));
    const ActionMask m = branch_mask(w);
    const std::uint64_t n = count_legal(m);
    CHECK(n == oracle::brute_force_count(m));
    std::set<std::tuple<int, std::uint32_t, int, int>> seen;
    for (std::uint64_t i = 0; i < n; ++i) {
      const StructuredAction a = legal_action_at(m, i);
      CHECK(oracle::legal(a, m));
      CHECK(is_legal(a, m));
      const bool fresh_entry = seen.insert({static_cast<int>(a.verb), a.who, static_cast<int>(a.direction),
                                            a.enemy_idx.value_or(-1)})
                                   .second;
      CHECK(fresh_entry);
    }
    CHECK_THROWS_AS(legal_action_at(m, n), PreconditionError);
  }
}

TEST_CASE("soundness and completeness on random worlds") {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const WorldState w = oracle::random_world(seed, static_cast<int>(seed % 70));
    if (w.terminated()) continue;
    const ActionMask m = branch_mask(w);
    for (int k = 0; k < 200; ++k) {
      const StructuredAction a = random_action(rng, w.friendly_count, w.enemy_count);
      const bool legal = oracle::legal(a, m);
      CHECK(is_legal(a, m) == legal);
      bool decoded = true;
      try {
        decode_structured(a, m, w);
      } catch (const ActionError&) {
        decoded = false;
      }
      CAPTURE(seed);
      CHECK(decoded == legal);
    }
  }
}

TEST_CASE("flat codes") {
  WorldState w = fresh();
  CHECK(flat_action_count(5) == 14);
  CHECK(flat_action_count(8) == 17);

  const Orders o = decode_flat({{0, 1, 3, 9, 13}}, w);
  CHECK(o[0].kind == OrderKind::NoOp);
  CHECK(o[1] == Order::move(Direction::N));
  CHECK(o[2] == Order::move(Direction::E));
  CHECK(o[3] == Order::attack(w.enemy_unit_id(0)));
  CHECK(o[4] == Order::attack(w.enemy_unit_id(4)));

  kill(w.enemy(0));
  CHECK(decode_flat({{9, 9, 9, 9, 9}}, w)[0].kind == OrderKind::NoOp);

  auto rejects = [&](FlatAction a) {
    try {
      decode_flat(a, w);
    } catch (const ActionError& e) {
      return e.code() == ActionErrorCode::InvalidAction;
    }
    return false;
  };
  CHECK(rejects({{14, 0, 0, 0, 0}}));
  CHECK(rejects({{-1, 0, 0, 0, 0}}));
  CHECK(rejects({{0, 0, 0, 0}}));
}

TEST_CASE("to_flat agrees with the structured decode") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const WorldState w = oracle::random_world(seed, static_cast<int>(seed % 40));
    if (w.terminated()) continue;
    const ActionMask m = branch_mask(w);
    Rng rng(seed);
    for (int k = 0; k < 50; ++k) {
      const StructuredAction a = legal_action_at(m, rng.below(count_legal(m)));
      CHECK(decode_flat(to_flat(a, w), w) == decode_structured(a, m, w));
    }
  }
}
