#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace twobridge;

namespace {

const Position kBeacon{48.5, 16.5};

WorldState five_left() {
  return make_world(two_bridge_grid(), {{8.5, 8.5}, {10.5, 8.5}, {12.5, 8.5}, {8.5, 10.5}, {10.5, 10.5}},
                    {{50.5, 50.5}, {52.5, 50.5}, {54.5, 50.5}}, kBeacon);
}

void kill(UnitState& u) {
  u.alive = false;
  u.hp = 0;
}

// Mean distance to the beacon, written out by hand.
double mean_beacon_distance(const WorldState& w) {
  double s = 0;
  int n = 0;
  for (const UnitState& u : w.units) {
    if (u.team != Team::Friendly || !u.alive) continue;
    s += std::hypot(u.pos.x - w.beacon.x, u.pos.y - w.beacon.y);
    ++n;
  }
  return s / n;
}

// Moves every friendly straight at the beacon by `step` units.
WorldState approach(const WorldState& w, double step) {
  WorldState next = w;
  for (int i = 0; i < next.friendly_count; ++i) {
    UnitState& u = next.friendly(i);
    const double d = distance(u.pos, next.beacon);
    u.pos = u.pos + (step / d) * (next.beacon - u.pos);
  }
  return next;
}

}  // namespace

TEST_CASE("terminal table matches the published values") {
  CHECK(terminal_reward(Outcome::NavigationVictory) == 25.0);
  CHECK(terminal_reward(Outcome::CombatVictory) == 10.0);
  CHECK(terminal_reward(Outcome::CombatLoss) == -10.0);
  CHECK(terminal_reward(Outcome::TimeoutLoss) == -15.0);
  CHECK(terminal_reward(Outcome::Tie) == 0.0);
}

TEST_CASE("nav shaping: still, approach, retreat") {
  const WorldState w = five_left();
  CHECK(nav_shaping(w, w) == 0.0);
  const WorldState closer = approach(w, 1.0);
  // Every unit gains 1.0, so the mean gains 1.0 and not 5.0.
  CHECK(nav_shaping(w, closer) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nav_shaping(closer, w) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(nav_shaping(w, closer) == doctest::Approx(mean_beacon_distance(w) - mean_beacon_distance(closer)));

  WorldState one = w;
  one.friendly(2).pos.x += 1.0;  // away from nothing in particular
  CHECK(nav_shaping(w, one) == doctest::Approx(mean_beacon_distance(w) - mean_beacon_distance(one)));
}

TEST_CASE("shaping is zero when the alive set changes") {
  const WorldState w = five_left();
  WorldState cur = approach(w, 1.0);
  kill(cur.friendly(3));
  CHECK(nav_shaping(w, cur) == 0.0);
  CHECK(combat_shaping(w, cur, RewardParams{}).dist == 0.0);

  WorldState enemy_down = approach(w, 1.0);
  kill(enemy_down.enemy(1));
  CHECK(nav_shaping(w, enemy_down) != 0.0);
  CHECK(combat_shaping(w, enemy_down, RewardParams{}).dist == 0.0);
}

TEST_CASE("combat hp and events") {
  const RewardParams p;
  const WorldState w = five_left();
  WorldState hit = w;
  hit.enemy(0).hp -= 6;
  const CombatShaping c = combat_shaping(w, hit, p);
  CHECK(c.hp == doctest::Approx(0.06));
  CHECK(c.events == 0.0);

  WorldState hurt = w;
  hurt.friendly(4).hp -= 12;
  CHECK(combat_shaping(w, hurt, p).hp == doctest::Approx(-0.12));

  WorldState kill_one = w;
  kill(kill_one.enemy(2));
  CHECK(combat_shaping(w, kill_one, p).events == p.kill_bonus);

  // Mutual annihilation: every alive unit on both sides drops at once.
  WorldState wipe = w;
  kill(wipe.enemy(1));
  WorldState prev = wipe;
  for (auto& u : wipe.units) kill(u);
  const CombatShaping all = combat_shaping(prev, wipe, p);
  CHECK(all.events == doctest::Approx(p.kill_bonus * 2 - p.casualty_penalty * 5));
  CHECK(all.hp == doctest::Approx(p.hp_scale * (2 * 45 - 5 * 45)));
}

TEST_CASE("combat distance points at the enemy centroid") {
  const WorldState w = five_left();
  WorldState cur = w;
  const Position c{52.5, 50.5};
  for (int i = 0; i < cur.friendly_count; ++i) {
    UnitState& u = cur.friendly(i);
    u.pos = u.pos + (0.5 / distance(u.pos, c)) * (c - u.pos);
  }
  CHECK(combat_shaping(w, cur, RewardParams{}).dist == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shaped reward decomposes exactly and pays the terminal once") {
  const RewardParams p;
  WorldState w = five_left();
  WorldState cur = approach(w, 0.5);
  cur.enemy(0).hp -= 6;
  cur.outcome = Outcome::TimeoutLoss;
  const RewardBreakdown r = shaped_reward(w, cur, p);
  CHECK(r.terminal == -15.0);
  CHECK(r.total == r.nav + r.combat_dist + r.combat_hp + r.combat_events + r.terminal);
  CHECK(r.nav == doctest::Approx(0.5));

  w.outcome = Outcome::TimeoutLoss;
  CHECK(shaped_reward(w, cur, p).terminal == 0.0);
}

TEST_CASE("telescoping over death-free segments") {
  Rng rng(2024);
  for (int seg = 0; seg < 200; ++seg) {
    WorldState w = five_left();
    w.tick_limit = 1 << 20;
    const WorldState first = w;
    double sum = 0;
    std::vector<WorldState> trail{w};
    for (int step = 0; step < 40; ++step) {
      Orders orders(w.friendly_count);
      for (auto& o : orders) o = Order::move(static_cast<Direction>(rng.index(8)));
      WorldState next = w;
      for (int k = 0; k < 8; ++k) advance(next, orders);
      sum += nav_shaping(w, next);
      w = next;
      trail.push_back(w);
    }
    REQUIRE_FALSE(w.terminated());
    CHECK(std::abs(sum - (mean_beacon_distance(first) - mean_beacon_distance(w))) < 1e-9);

    // Walking the same trail backwards negates the sum.
    double back = 0;
    for (std::size_t i = trail.size() - 1; i > 0; --i) back += nav_shaping(trail[i], trail[i - 1]);
    CHECK(std::abs(back + sum) < 1e-9);
  }
}

TEST_CASE("pilot reward") {
  WorldState w = five_left();
  WorldState cur = w;
  Position& lead = cur.friendly(0).pos;
  lead = lead + (2.0 / distance(lead, cur.beacon)) * (cur.beacon - lead);
  cur.friendly(1).pos.x -= 3.0;  // not the leading unit
  RewardBreakdown r = pilot_reward(w, cur);
  CHECK(r.nav == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.total == r.nav);

  // The leading unit is the lowest id still alive.
  WorldState dead_lead = cur;
  kill(dead_lead.friendly(0));
  CHECK(pilot_reward(w, dead_lead).nav ==
        doctest::Approx(distance(w.friendly(1).pos, w.beacon) - distance(dead_lead.friendly(1).pos, w.beacon)));
  CHECK(pilot_reward(w, dead_lead).nav < 0.0);

  WorldState trade = w;
  kill(trade.enemy(0));
  kill(trade.friendly(4));
  CHECK(pilot_reward(w, trade).combat_events == 0.0);
  kill(trade.enemy(1));
  CHECK(pilot_reward(w, trade).combat_events == 1.0);

  WorldState done = w;
  done.outcome = Outcome::TimeoutLoss;
  CHECK(pilot_reward(w, done).terminal == -10.0);
  done.outcome = Outcome::NavigationVictory;
  CHECK(pilot_reward(w, done).terminal == 10.0);
  done.outcome = Outcome::CombatVictory;
  CHECK(pilot_reward(w, done).terminal == 10.0);
  done.outcome = Outcome::CombatLoss;
  CHECK(pilot_reward(w, done).terminal == -10.0);
  done.outcome = Outcome::Tie;
  CHECK(pilot_reward(w, done).terminal == 0.0);
}
