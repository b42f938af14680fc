#include "twobridge/actions.hpp"

#include <bit>
#include <string>

namespace twobridge {

namespace {

// Non-empty subsets of the set bits of `allowed`, in ascending numeric order.
std::vector<std::uint32_t> nonempty_subsets(std::uint32_t allowed) {
  std::vector<std::uint32_t> out;
  // Enumerate submasks descending, then reverse.
  for (std::uint32_t s = allowed; s != 0; s = (s - 1) & allowed) out.push_back(s);
  return {out.rbegin(), out.rend()};
}

std::uint32_t as_bits(const std::vector<bool>& flags) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) bits |= 1u << i;
  }
  return bits;
}

std::vector<int> legal_indices(const auto& flags) {
  std::vector<int> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

[[noreturn]] void reject(ActionErrorCode code, const std::string& detail) {
  throw ActionError(code, std::string(to_string(code)) + ": " + detail);
}

}  // namespace

std::string_view to_string(Verb v) {
  switch (v) {
    case Verb::NoOp: return "noop";
    case Verb::Move: return "move";
    case Verb::Attack: return "attack";
  }
  return "?";
}

std::array<bool, kNumVerbs> verb_mask(const WorldState& world) {
  if (world.terminated()) return {true, false, false};
  return {true, world.friendly_alive() >= 1, world.enemy_alive() >= 1};
}

ActionMask branch_mask(const WorldState& world) {
  ActionMask m;
  m.verb = verb_mask(world);
  m.who.assign(world.friendly_count, false);
  m.enemy.assign(world.enemy_count + 1, false);
  m.enemy[world.enemy_count] = true;
  if (world.terminated()) return m;

  for (int i = 0; i < world.friendly_count; ++i) m.who[i] = world.friendly(i).alive;
  for (int j = 0; j < world.enemy_count; ++j) m.enemy[j] = world.enemy(j).alive;
  for (int d = 0; d < kNumDirections; ++d) {
    for (int i = 0; i < world.friendly_count && !m.direction[d]; ++i) {
      const UnitState& u = world.friendly(i);
      if (!u.alive) continue;
      m.direction[d] = apply_move(u, static_cast<Direction>(d), *world.grid, world.params.move_speed) != u.pos;
    }
  }
  // A legal verb must have a legal completion.
  bool any_direction = false;
  for (bool b : m.direction) any_direction = any_direction || b;
  m.verb[static_cast<int>(Verb::Move)] = m.verb[static_cast<int>(Verb::Move)] && any_direction;
  return m;
}

ActionMask verb_only_mask(const WorldState& world) {
  ActionMask m;
  m.verb = verb_mask(world);
  m.who.assign(world.friendly_count, true);
  m.direction.fill(true);
  m.enemy.assign(world.enemy_count + 1, true);
  return m;
}

bool is_legal(const StructuredAction& a, const ActionMask& m) {
  if (!m.verb[static_cast<int>(a.verb)]) return false;
  if (a.verb == Verb::NoOp) return true;
  const std::uint32_t allowed = as_bits(m.who);
  if (a.who == 0 || (a.who & ~allowed) != 0) return false;
  if (a.verb == Verb::Move) return m.direction[static_cast<int>(a.direction)];
  const int null_slot = static_cast<int>(m.enemy.size()) - 1;
  const int idx = a.enemy_idx.value_or(null_slot);
  return idx >= 0 && idx <= null_slot && m.enemy[idx];
}

Orders decode_structured(const StructuredAction& a, const ActionMask& m, const WorldState& world) {
  Orders orders(world.friendly_count, Order::noop());
  if (!m.verb[static_cast<int>(a.verb)]) reject(ActionErrorCode::InvalidVerb, "verb is masked");
  if (a.verb == Verb::NoOp) return orders;

  if (a.who >= (1u << world.friendly_count)) reject(ActionErrorCode::InvalidSelection, "selection out of range");
  if ((a.who & ~as_bits(m.who)) != 0) reject(ActionErrorCode::InvalidSelection, "selection includes masked units");

  Order order;
  if (a.verb == Verb::Move) {
    if (!m.direction[static_cast<int>(a.direction)]) reject(ActionErrorCode::InvalidDirection, "direction is masked");
    order = Order::move(a.direction);
  } else {
    const int null_slot = world.enemy_count;
    const int idx = a.enemy_idx.value_or(null_slot);
    if (idx < 0 || idx > null_slot) reject(ActionErrorCode::InvalidTarget, "enemy index out of range");
    if (!m.enemy[idx]) reject(ActionErrorCode::InvalidTarget, "enemy index is masked");
    order = idx == null_slot ? Order::noop() : Order::attack(world.enemy_unit_id(idx));
  }

  int selected = 0;
  for (int i = 0; i < world.friendly_count; ++i) {
    if ((a.who >> i & 1u) && world.friendly(i).alive) {
      orders[i] = order;
      ++selected;
    }
  }
  if (selected == 0) reject(ActionErrorCode::InvalidSelection, "no alive unit selected");
  return orders;
}

Orders decode_flat(const FlatAction& a, const WorldState& world) {
  if (static_cast<int>(a.codes.size()) != world.friendly_count) {
    reject(ActionErrorCode::InvalidAction, "expected " + std::to_string(world.friendly_count) + " codes");
  }
  const int limit = flat_action_count(world.enemy_count);
  Orders orders(world.friendly_count, Order::noop());
  for (int i = 0; i < world.friendly_count; ++i) {
    const int code = a.codes[i];
    if (code < 0 || code >= limit) reject(ActionErrorCode::InvalidAction, "code " + std::to_string(code) + " out of range");
    if (!world.friendly(i).alive || code == 0) continue;
    if (code <= kNumDirections) {
      orders[i] = Order::move(static_cast<Direction>(code - 1));
    } else {
      const int slot = code - 9;
      if (world.enemy(slot).alive) orders[i] = Order::attack(world.enemy_unit_id(slot));
    }
  }
  return orders;
}

FlatAction to_flat(const StructuredAction& a, const WorldState& world) {
  FlatAction out{std::vector<int>(world.friendly_count, 0)};
  if (a.verb == Verb::NoOp) return out;
  int code = 0;
  if (a.verb == Verb::Move) {
    code = 1 + static_cast<int>(a.direction);
  } else if (a.enemy_idx && *a.enemy_idx >= 0 && *a.enemy_idx < world.enemy_count) {
    code = 9 + *a.enemy_idx;
  }
  for (int i = 0; i < world.friendly_count; ++i) {
    if (a.who >> i & 1u) out.codes[i] = code;
  }
  return out;
}

std::uint64_t count_legal(const ActionMask& m) {
  std::uint64_t total = 1;
  const std::uint64_t subsets = (std::uint64_t{1} << std::popcount(as_bits(m.who))) - 1;
  if (m.verb[static_cast<int>(Verb::Move)]) total += subsets * legal_indices(m.direction).size();
  if (m.verb[static_cast<int>(Verb::Attack)]) total += subsets * legal_indices(m.enemy).size();
  return total;
}

StructuredAction legal_action_at(const ActionMask& m, std::uint64_t index) {
  if (index == 0) return {};
  --index;
  const auto subsets = nonempty_subsets(as_bits(m.who));
  if (m.verb[static_cast<int>(Verb::Move)]) {
    const auto dirs = legal_indices(m.direction);
    const std::uint64_t n = subsets.size() * dirs.size();
    if (index < n) {
      return {Verb::Move, subsets[index / dirs.size()], static_cast<Direction>(dirs[index % dirs.size()]),
              std::nullopt};
    }
    index -= n;
  }
  if (m.verb[static_cast<int>(Verb::Attack)]) {
    const auto targets = legal_indices(m.enemy);
    const std::uint64_t n = subsets.size() * targets.size();
    if (index < n) {
      const int t = targets[index % targets.size()];
      const bool is_null = t == static_cast<int>(m.enemy.size()) - 1;
      return {Verb::Attack, subsets[index / targets.size()], Direction::N,
              is_null ? std::nullopt : std::optional<int>(t)};
    }
  }
  throw PreconditionError("legal action index out of range");
}

}  // namespace twobridge
