#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "twobridge/engine.hpp"

namespace twobridge {

enum class Verb : std::uint8_t { NoOp, Move, Attack };
inline constexpr int kNumVerbs = 3;

std::string_view to_string(Verb v);

// Bit i of `who` selects friendly slot i. `enemy_idx` absent is the null
// target, which holds position.
struct StructuredAction {
  Verb verb = Verb::NoOp;
  std::uint32_t who = 0;
  Direction direction = Direction::N;
  std::optional<int> enemy_idx;

  friend bool operator==(const StructuredAction&, const StructuredAction&) = default;
};

// Per-unit codes: 0 no-op, 1..8 compass moves (N, NE, ... NW), 9.. attack on
// enemy slot code - 9.
struct FlatAction {
  std::vector<int> codes;
  friend bool operator==(const FlatAction&, const FlatAction&) = default;
};

inline int flat_action_count(int enemy_slots) { return 9 + enemy_slots; }

// enemy has one entry per enemy slot plus a trailing null-target entry.
struct ActionMask {
  std::array<bool, kNumVerbs> verb{true, false, false};
  std::vector<bool> who;
  std::array<bool, kNumDirections> direction{};
  std::vector<bool> enemy;

  friend bool operator==(const ActionMask&, const ActionMask&) = default;
};

std::array<bool, kNumVerbs> verb_mask(const WorldState& world);

// Full per-branch legality. A direction is legal when at least one alive
// friendly would actually change position moving that way.
ActionMask branch_mask(const WorldState& world);

// Verb legality only; the other branches are left fully open.
ActionMask verb_only_mask(const WorldState& world);

// Mask-level legality: no world lookups.
bool is_legal(const StructuredAction& action, const ActionMask& mask);

// Orders for each friendly slot. Throws ActionError when a used branch
// violates the mask or the selection has no alive unit.
Orders decode_structured(const StructuredAction& action, const ActionMask& mask, const WorldState& world);

// Unmasked per-unit decoding. Attacks on dead slots degrade to NoOp. Throws
// ActionError(InvalidAction) for out-of-range codes or a wrong code count.
Orders decode_flat(const FlatAction& action, const WorldState& world);

FlatAction to_flat(const StructuredAction& action, const WorldState& world);

// Enumeration of the legal joint actions under a mask, in a fixed order:
// NoOp, then Move (selection-major, direction-minor), then Attack
// (selection-major, target-minor, null last).
std::uint64_t count_legal(const ActionMask& mask);
StructuredAction legal_action_at(const ActionMask& mask, std::uint64_t index);

}  // namespace twobridge
