#include "twobridge/reward.hpp"

namespace twobridge {

namespace {

bool same_alive_set(const WorldState& a, const WorldState& b, Team team) {
  for (std::size_t k = 0; k < a.units.size(); ++k) {
    if (a.units[k].team == team && a.units[k].alive != b.units[k].alive) return false;
  }
  return true;
}

int team_hp(const WorldState& w, Team team) {
  int total = 0;
  for (const UnitState& u : w.units) {
    if (u.team == team) total += u.hp;
  }
  return total;
}

std::optional<Position> enemy_centroid(const WorldState& w) {
  Position sum;
  int n = 0;
  for (int j = 0; j < w.enemy_count; ++j) {
    if (!w.enemy(j).alive) continue;
    sum += w.enemy(j).pos;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return (1.0 / n) * sum;
}

}  // namespace

double TerminalTable::operator[](Outcome o) const {
  switch (o) {
    case Outcome::NavigationVictory: return navigation_victory;
    case Outcome::CombatVictory: return combat_victory;
    case Outcome::CombatLoss: return combat_loss;
    case Outcome::Tie: return tie;
    case Outcome::TimeoutLoss: return timeout_loss;
  }
  return 0.0;
}

double average_distance(const WorldState& world, Position target) {
  double sum = 0.0;
  int n = 0;
  for (int i = 0; i < world.friendly_count; ++i) {
    const UnitState& u = world.friendly(i);
    if (!u.alive) continue;
    sum += distance(u.pos, target);
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

double nav_shaping(const WorldState& prev, const WorldState& cur) {
  if (!same_alive_set(prev, cur, Team::Friendly) || cur.friendly_alive() == 0) return 0.0;
  return average_distance(prev, prev.beacon) - average_distance(cur, cur.beacon);
}

CombatShaping combat_shaping(const WorldState& prev, const WorldState& cur, const RewardParams& params) {
  CombatShaping out;
  if (same_alive_set(prev, cur, Team::Friendly) && same_alive_set(prev, cur, Team::Enemy) &&
      cur.friendly_alive() > 0) {
    const auto c_prev = enemy_centroid(prev);
    const auto c_cur = enemy_centroid(cur);
    if (c_prev && c_cur) {
      out.dist = params.dist_scale * (average_distance(prev, *c_prev) - average_distance(cur, *c_cur));
    }
  }
  const int enemy_lost_hp = team_hp(prev, Team::Enemy) - team_hp(cur, Team::Enemy);
  const int friendly_lost_hp = team_hp(prev, Team::Friendly) - team_hp(cur, Team::Friendly);
  out.hp = params.hp_scale * static_cast<double>(enemy_lost_hp - friendly_lost_hp);
  const int kills = prev.enemy_alive() - cur.enemy_alive();
  const int losses = prev.friendly_alive() - cur.friendly_alive();
  out.events = params.kill_bonus * kills - params.casualty_penalty * losses;
  return out;
}

double terminal_reward(Outcome outcome, const TerminalTable& table) { return table[outcome]; }

RewardBreakdown shaped_reward(const WorldState& prev, const WorldState& cur, const RewardParams& params) {
  RewardBreakdown r;
  r.nav = params.dist_scale * nav_shaping(prev, cur);
  const CombatShaping c = combat_shaping(prev, cur, params);
  r.combat_dist = c.dist;
  r.combat_hp = c.hp;
  r.combat_events = c.events;
  if (cur.outcome && !prev.outcome) r.terminal = terminal_reward(*cur.outcome, params.terminal_table);
  r.finalize();
  return r;
}

RewardBreakdown pilot_reward(const WorldState& prev, const WorldState& cur) {
  RewardBreakdown r;
  for (int i = 0; i < cur.friendly_count; ++i) {
    if (!cur.friendly(i).alive) continue;
    r.nav = distance(prev.friendly(i).pos, prev.beacon) - distance(cur.friendly(i).pos, cur.beacon);
    break;
  }
  r.combat_events = static_cast<double>((prev.enemy_alive() - cur.enemy_alive()) -
                                        (prev.friendly_alive() - cur.friendly_alive()));
  if (cur.outcome && !prev.outcome) {
    switch (*cur.outcome) {
      case Outcome::NavigationVictory:
      case Outcome::CombatVictory: r.terminal = 10.0; break;
      case Outcome::CombatLoss:
      case Outcome::TimeoutLoss: r.terminal = -10.0; break;
      case Outcome::Tie: r.terminal = 0.0; break;
    }
  }
  r.finalize();
  return r;
}

}  // namespace twobridge
