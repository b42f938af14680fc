#pragma once

#include <optional>

#include "twobridge/engine.hpp"

namespace twobridge {

struct RewardBreakdown {
  double nav = 0.0;
  double combat_dist = 0.0;
  double combat_hp = 0.0;
  double combat_events = 0.0;
  double terminal = 0.0;
  double total = 0.0;

  // total is always recomputed here, in this order.
  void finalize() { total = nav + combat_dist + combat_hp + combat_events + terminal; }

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

struct TerminalTable {
  double navigation_victory = 25.0;
  double combat_victory = 10.0;
  double combat_loss = -10.0;
  double timeout_loss = -15.0;
  double tie = 0.0;

  double operator[](Outcome o) const;
  friend bool operator==(const TerminalTable&, const TerminalTable&) = default;
};

struct RewardParams {
  double hp_scale = 0.01;
  double kill_bonus = 2.0;
  double casualty_penalty = 2.0;
  double dist_scale = 1.0;
  TerminalTable terminal_table;

  friend bool operator==(const RewardParams&, const RewardParams&) = default;
};

// Mean distance from alive friendlies to `target`; 0 when none are alive.
double average_distance(const WorldState& world, Position target);

// Change in the mean friendly-to-beacon distance, positive when approaching.
// Zero when the alive friendly set changed between the two worlds.
double nav_shaping(const WorldState& prev, const WorldState& cur);

struct CombatShaping {
  double dist = 0.0;
  double hp = 0.0;
  double events = 0.0;
};

CombatShaping combat_shaping(const WorldState& prev, const WorldState& cur, const RewardParams& params);

double terminal_reward(Outcome outcome, const TerminalTable& table = {});

// Shaped reward used by the structured-action profiles.
RewardBreakdown shaped_reward(const WorldState& prev, const WorldState& cur, const RewardParams& params);

// Leading-unit distance delta + kill/loss delta + symmetric +-10 terminal.
// The leading unit is the lowest-id friendly alive in `cur`.
RewardBreakdown pilot_reward(const WorldState& prev, const WorldState& cur);

}  // namespace twobridge
