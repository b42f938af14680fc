#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twobridge/env.hpp"

namespace twobridge {

// Uniform over the legal joint actions of `mask` (see count_legal).
StructuredAction agent_random_masked(const WorldState& world, const ActionMask& mask, Rng& rng);

// Selects every alive unit and moves along the compass direction best
// aligned with the shortest path from the friendly closest to the beacon.
StructuredAction agent_beacon_greedy(const WorldState& world);

// Every alive unit attacks the alive enemy with the lowest hp (lowest slot
// on ties). NoOp once no enemy is left.
StructuredAction agent_focus_fire(const WorldState& world);

enum class AgentKind : std::uint8_t { Idle, RandomMasked, BeaconGreedy, FocusFire };
inline constexpr std::array<AgentKind, 4> kAllAgents{AgentKind::Idle, AgentKind::RandomMasked,
                                                     AgentKind::BeaconGreedy, AgentKind::FocusFire};

std::string_view to_string(AgentKind a);
AgentKind parse_agent(std::string_view s);  // throws ConfigError

// Stateful wrapper that turns an agent kind into actions for any profile.
// Pilot profiles receive the flat translation of the structured choice.
class Policy {
 public:
  Policy(AgentKind kind, std::uint64_t episode_seed);
  Action act(const Environment& env);
  AgentKind kind() const { return kind_; }

 private:
  AgentKind kind_;
  Rng rng_;
};

struct EpisodeResult {
  Outcome outcome = Outcome::TimeoutLoss;
  int steps = 0;
  double total_reward = 0.0;
};

EpisodeResult run_episode(AgentKind agent, const EnvConfig& config);

struct OutcomeDistribution {
  std::string variant;
  std::string agent;
  std::string profile;
  std::uint64_t seed0 = 0;
  int n = 0;
  std::array<int, kNumOutcomes> counts{};
  double mean_steps = 0.0;
  double mean_reward = 0.0;

  int count(Outcome o) const { return counts[static_cast<int>(o)]; }
  double rate(Outcome o) const { return n == 0 ? 0.0 : static_cast<double>(count(o)) / n; }
  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

// Episodes use seeds seed0 .. seed0 + n - 1. The parallel version spreads
// episodes over OpenMP threads and reduces in seed order, so both return
// identical distributions.
OutcomeDistribution run_episodes(AgentKind agent, const EnvConfig& base, int n, std::uint64_t seed0);
OutcomeDistribution run_episodes_serial(AgentKind agent, const EnvConfig& base, int n, std::uint64_t seed0);

// CSV columns: variant, agent, seeds, the five outcome counts, mean_steps,
// mean_reward.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const OutcomeDistribution& d);
std::string format_table(const std::vector<OutcomeDistribution>& rows);

struct ThroughputReport {
  std::string variant;
  std::string profile;
  double duration_seconds = 0.0;
  long long single_steps = 0;
  double single_steps_per_sec = 0.0;
  int instances = 0;
  int threads = 0;
  long long parallel_steps = 0;
  double parallel_steps_per_sec = 0.0;
};

// Random-masked agent, headless. Measures one instance, then `instances`
// independent instances running concurrently.
ThroughputReport bench_throughput(const EnvConfig& config, double duration_seconds, int instances = 8);

std::string format_report(const ThroughputReport& r);

}  // namespace twobridge
