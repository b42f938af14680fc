#include "twobridge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twobridge {

namespace {
constexpr std::size_t kMaxUnits = 64;
}

void CombatParams::validate() const {
  if (max_hp <= 0 || damage_per_shot <= 0 || attack_range <= 0 || cooldown_ticks <= 0 || move_speed <= 0 ||
      acquisition_range <= 0 || unit_radius <= 0 || capture_radius <= 0) {
    throw ConfigError("combat parameters must all be positive");
  }
  if (acquisition_range < attack_range) throw ConfigError("acquisition_range must be >= attack_range");
}

int WorldState::friendly_alive() const {
  int n = 0;
  for (int i = 0; i < friendly_count; ++i) n += units[i].alive ? 1 : 0;
  return n;
}

int WorldState::enemy_alive() const {
  int n = 0;
  for (int j = 0; j < enemy_count; ++j) n += units[friendly_count + j].alive ? 1 : 0;
  return n;
}

WorldState make_world(std::shared_ptr<const TerrainGrid> grid, const std::vector<Position>& friendly,
                      const std::vector<Position>& enemy, Position beacon, const CombatParams& params,
                      int tick_limit) {
  params.validate();
  if (friendly.size() + enemy.size() > kMaxUnits) throw ConfigError("too many units");
  WorldState w;
  w.grid = std::move(grid);
  w.beacon = beacon;
  w.params = params;
  w.tick_limit = tick_limit;
  w.friendly_count = static_cast<int>(friendly.size());
  w.enemy_count = static_cast<int>(enemy.size());
  int id = 0;
  for (Position p : friendly) w.units.push_back({id++, Team::Friendly, p, params.max_hp, 0, true, false, {}});
  for (Position p : enemy) w.units.push_back({id++, Team::Enemy, p, params.max_hp, 0, true, false, {}});
  return w;
}

WorldState make_world(std::shared_ptr<const TerrainGrid> grid, const SpawnAssignment& spawn,
                      const CombatParams& params, int tick_limit) {
  return make_world(std::move(grid), spawn.friendly_positions, spawn.enemy_positions, spawn.beacon_position,
                    params, tick_limit);
}

Position apply_move(const UnitState& unit, Direction direction, const TerrainGrid& grid, double speed) {
  const Position dest = unit.pos + speed * unit_vector(direction);
  return grid.passable(dest) ? dest : unit.pos;
}

Position step_toward(Position from, Position goal, const TerrainGrid& grid, double speed) {
  Position waypoint = goal;
  if (!grid.line_of_sight(from, goal)) {
    const auto hop = grid.next_hop(TerrainGrid::cell_of(from), TerrainGrid::cell_of(goal));
    if (!hop) return from;
    waypoint = center_of(*hop);
  }
  const Vec2 delta = waypoint - from;
  const double len = norm(delta);
  if (len == 0.0) return from;
  const Position dest = len <= speed ? waypoint : from + (speed / len) * delta;
  return grid.passable(dest) ? dest : from;
}

Order apply_attack_order(UnitState& unit, int target_id, const WorldState& world) {
  if (target_id < 0 || target_id >= static_cast<int>(world.units.size())) {
    throw PreconditionError("attack target " + std::to_string(target_id) + " does not exist");
  }
  const UnitState& target = world.units[target_id];
  if (!target.alive) return Order::noop();
  if (distance(unit.pos, target.pos) > world.params.attack_range) {
    unit.pos = step_toward(unit.pos, target.pos, *world.grid, world.params.move_speed);
  }
  return Order::attack(target_id);
}

void enemy_ai_step(WorldState& world) {
  const auto& p = world.params;
  for (int j = 0; j < world.enemy_count; ++j) {
    UnitState& e = world.enemy(j);
    if (!e.alive) {
      e.order = Order::noop();
      continue;
    }
    int nearest = -1;
    double nearest_dist = 0.0;
    for (int i = 0; i < world.friendly_count; ++i) {
      const UnitState& f = world.friendly(i);
      if (!f.alive) continue;
      const double d = distance(e.pos, f.pos);
      if (nearest < 0 || d < nearest_dist) {
        nearest = i;
        nearest_dist = d;
      }
    }
    if (!e.provoked && (e.hp < p.max_hp || (nearest >= 0 && nearest_dist <= p.acquisition_range))) {
      e.provoked = true;
    }
    e.order = (e.provoked && nearest >= 0) ? Order::attack(world.friendly(nearest).id) : Order::noop();
  }
}

std::optional<Outcome> check_termination(const WorldState& world, std::int64_t tick_limit) {
  for (int i = 0; i < world.friendly_count; ++i) {
    const UnitState& f = world.friendly(i);
    if (f.alive && distance(f.pos, world.beacon) <= world.params.capture_radius) {
      return Outcome::NavigationVictory;
    }
  }
  const int e = world.enemy_alive();
  const int f = world.friendly_alive();
  if (e == 0 && f == 0) return Outcome::Tie;
  if (e == 0) return Outcome::CombatVictory;
  if (f == 0) return Outcome::CombatLoss;
  if (world.tick >= tick_limit) return Outcome::TimeoutLoss;
  return std::nullopt;
}

void advance(WorldState& world, const Orders& friendly_orders) {
  if (world.terminated()) throw LifecycleError("cannot step a terminated world");
  if (static_cast<int>(friendly_orders.size()) != world.friendly_count) {
    throw PreconditionError("expected one order per friendly slot");
  }
  const auto& p = world.params;
  const TerrainGrid& grid = *world.grid;

  for (int i = 0; i < world.friendly_count; ++i) {
    UnitState& f = world.friendly(i);
    f.order = f.alive ? friendly_orders[i] : Order::noop();
  }

  enemy_ai_step(world);

  for (UnitState& u : world.units) {
    if (!u.alive) continue;
    switch (u.order.kind) {
      case OrderKind::NoOp:
        break;
      case OrderKind::Move:
        u.pos = apply_move(u, u.order.direction, grid, p.move_speed);
        break;
      case OrderKind::Attack:
        u.order = apply_attack_order(u, u.order.target, world);
        break;
    }
  }

  std::array<int, kMaxUnits> damage{};
  for (UnitState& u : world.units) {
    if (!u.alive || u.order.kind != OrderKind::Attack || u.cooldown > 0) continue;
    const UnitState& t = world.units[u.order.target];
    if (t.alive && distance(u.pos, t.pos) <= p.attack_range) {
      damage[t.id] += p.damage_per_shot;
      u.cooldown = p.cooldown_ticks;
    }
  }

  for (UnitState& u : world.units) {
    if (damage[u.id] == 0) continue;
    u.hp = std::max(0, u.hp - damage[u.id]);
    if (u.hp == 0) {
      u.alive = false;
      u.order = Order::noop();
    }
  }

  for (UnitState& u : world.units) {
    if (u.cooldown > 0) --u.cooldown;
  }

  ++world.tick;
  world.outcome = check_termination(world, world.tick_limit);
}

WorldState tick(WorldState world, const Orders& friendly_orders) {
  advance(world, friendly_orders);
  return world;
}

}  // namespace twobridge
