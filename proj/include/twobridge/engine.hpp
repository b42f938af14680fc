#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "twobridge/spawn.hpp"
#include "twobridge/world.hpp"

namespace twobridge {

// Marine-like numbers. Only max_hp comes straight from the game; the rest are
// approximations so that a 5v5 head-on fight spans several agent steps.
struct CombatParams {
  int max_hp = 45;
  int damage_per_shot = 6;
  double attack_range = 5.0;
  int cooldown_ticks = 14;            // 0.86 s at 16 ticks/s, rounded
  double move_speed = 3.15 / 16.0;    // world units per tick
  double acquisition_range = 6.0;
  double unit_radius = 0.5;
  double capture_radius = 2.0;

  void validate() const;
  friend bool operator==(const CombatParams&, const CombatParams&) = default;
};

inline constexpr int kTicksPerSecond = 16;
inline constexpr int kDefaultTickLimit = 5 * 60 * kTicksPerSecond;  // 4800

enum class OrderKind : std::uint8_t { NoOp, Move, Attack };

struct Order {
  OrderKind kind = OrderKind::NoOp;
  Direction direction = Direction::N;  // Move only
  int target = -1;                     // unit id, Attack only

  static Order noop() { return {}; }
  static Order move(Direction d) { return {OrderKind::Move, d, -1}; }
  static Order attack(int unit_id) { return {OrderKind::Attack, Direction::N, unit_id}; }
  friend bool operator==(const Order&, const Order&) = default;
};

struct UnitState {
  int id = 0;
  Team team = Team::Friendly;
  Position pos;
  int hp = 45;
  int cooldown = 0;
  bool alive = true;
  bool provoked = false;
  Order order;

  friend bool operator==(const UnitState&, const UnitState&) = default;
};

// Units are stored by id: friendlies first (ids 0..F-1), then enemies
// (ids F..F+E-1). Enemy slot j is unit F + j.
struct WorldState {
  std::int64_t tick = 0;
  std::vector<UnitState> units;
  Position beacon;
  std::shared_ptr<const TerrainGrid> grid;
  std::optional<Outcome> outcome;
  int tick_limit = kDefaultTickLimit;
  int friendly_count = 5;
  int enemy_count = 5;
  CombatParams params;

  const UnitState& friendly(int slot) const { return units[slot]; }
  UnitState& friendly(int slot) { return units[slot]; }
  const UnitState& enemy(int slot) const { return units[friendly_count + slot]; }
  UnitState& enemy(int slot) { return units[friendly_count + slot]; }
  int enemy_unit_id(int slot) const { return friendly_count + slot; }

  int friendly_alive() const;
  int enemy_alive() const;
  bool terminated() const { return outcome.has_value(); }
  double elapsed_seconds() const { return static_cast<double>(tick) / kTicksPerSecond; }

  friend bool operator==(const WorldState& a, const WorldState& b) {
    return a.tick == b.tick && a.units == b.units && a.beacon == b.beacon && a.outcome == b.outcome &&
           a.tick_limit == b.tick_limit && a.friendly_count == b.friendly_count &&
           a.enemy_count == b.enemy_count && a.params == b.params && a.grid == b.grid;
  }
};

// Per-friendly-slot orders for one tick.
using Orders = std::vector<Order>;

WorldState make_world(std::shared_ptr<const TerrainGrid> grid, const SpawnAssignment& spawn,
                      const CombatParams& params = {}, int tick_limit = kDefaultTickLimit);

// Builds a world from explicit positions; used for constructed scenarios.
WorldState make_world(std::shared_ptr<const TerrainGrid> grid, const std::vector<Position>& friendly,
                      const std::vector<Position>& enemy, Position beacon, const CombatParams& params = {},
                      int tick_limit = kDefaultTickLimit);

// One simulation step, phases in order: enemy AI, movement (ascending id),
// attacks (simultaneous, against pre-phase hp), deaths, cooldowns,
// termination. Throws LifecycleError on a terminated world.
void advance(WorldState& world, const Orders& friendly_orders);
WorldState tick(WorldState world, const Orders& friendly_orders);

// Hard stop: the position is unchanged if the destination cell is blocked or
// off the map.
Position apply_move(const UnitState& unit, Direction direction, const TerrainGrid& grid, double speed);

// Moves up to `speed` toward `goal`: straight when the segment is clear,
// otherwise toward the next cell of a shortest path.
Position step_toward(Position from, Position goal, const TerrainGrid& grid, double speed);

// Resolves the movement half of an attack order for `unit`. Returns the
// order the unit ends up holding (NoOp if the target is dead). Throws
// PreconditionError for an unknown target id.
Order apply_attack_order(UnitState& unit, int target_id, const WorldState& world);

// Writes fresh orders into every alive enemy and updates provocation.
void enemy_ai_step(WorldState& world);

std::optional<Outcome> check_termination(const WorldState& world, std::int64_t tick_limit);

}  // namespace twobridge
