#include "twobridge/baselines.hpp"

#include <limits>

namespace twobridge {

namespace {

constexpr int kLookahead = 8;

std::uint32_t alive_friendlies(const WorldState& w) {
  std::uint32_t bits = 0;
  for (int i = 0; i < w.friendly_count; ++i) {
    if (w.friendly(i).alive) bits |= 1u << i;
  }
  return bits;
}

}  // namespace

StructuredAction agent_random_masked(const WorldState&, const ActionMask& mask, Rng& rng) {
  return legal_action_at(mask, rng.below(count_legal(mask)));
}

StructuredAction agent_beacon_greedy(const WorldState& world) {
  if (world.terminated() || world.friendly_alive() == 0) return {};

  const UnitState* anchor = nullptr;
  for (int i = 0; i < world.friendly_count; ++i) {
    const UnitState& u = world.friendly(i);
    if (u.alive && (!anchor || distance(u.pos, world.beacon) < distance(anchor->pos, world.beacon))) anchor = &u;
  }

  const TerrainGrid& grid = *world.grid;
  Position aim = world.beacon;
  if (const auto path = find_path(grid, anchor->pos, world.beacon); path && path->size() > 1) {
    // Furthest waypoint in a short window that is directly reachable.
    aim = (*path)[1];
    const std::size_t last = std::min(path->size() - 1, static_cast<std::size_t>(kLookahead));
    for (std::size_t k = last; k > 1; --k) {
      if (grid.line_of_sight(anchor->pos, (*path)[k])) {
        aim = (*path)[k];
        break;
      }
    }
    if (path->size() - 1 <= static_cast<std::size_t>(kLookahead) && grid.line_of_sight(anchor->pos, world.beacon)) {
      aim = world.beacon;
    }
  }

  const Vec2 want = aim - anchor->pos;
  const double len = norm(want);
  int best = -1;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (int d = 0; d < kNumDirections; ++d) {
    const auto dir = static_cast<Direction>(d);
    if (apply_move(*anchor, dir, grid, world.params.move_speed) == anchor->pos) continue;
    const Vec2 u = unit_vector(dir);
    const double dot = len > 0 ? (u.x * want.x + u.y * want.y) / len : 0.0;
    if (dot > best_dot) {
      best_dot = dot;
      best = d;
    }
  }
  if (best < 0) return {};
  return {Verb::Move, alive_friendlies(world), static_cast<Direction>(best), std::nullopt};
}

StructuredAction agent_focus_fire(const WorldState& world) {
  if (world.terminated() || world.friendly_alive() == 0) return {};
  int target = -1;
  for (int j = 0; j < world.enemy_count; ++j) {
    const UnitState& e = world.enemy(j);
    if (e.alive && (target < 0 || e.hp < world.enemy(target).hp)) target = j;
  }
  if (target < 0) return {};
  return {Verb::Attack, alive_friendlies(world), Direction::N, target};
}

std::string_view to_string(AgentKind a) {
  switch (a) {
    case AgentKind::Idle: return "idle";
    case AgentKind::RandomMasked: return "random";
    case AgentKind::BeaconGreedy: return "beacon-greedy";
    case AgentKind::FocusFire: return "focus-fire";
  }
  return "?";
}

AgentKind parse_agent(std::string_view s) {
  for (AgentKind a : kAllAgents) {
    if (to_string(a) == s) return a;
  }
  throw ConfigError("unknown agent '" + std::string(s) + "'");
}

Policy::Policy(AgentKind kind, std::uint64_t episode_seed)
    : kind_(kind), rng_(splitmix64(episode_seed ^ 0x5eedba5e11a9e5ULL)) {}

Action Policy::act(const Environment& env) {
  const WorldState& w = env.world();
  StructuredAction a;
  switch (kind_) {
    case AgentKind::Idle: break;
    case AgentKind::RandomMasked: a = agent_random_masked(w, branch_mask(w), rng_); break;
    case AgentKind::BeaconGreedy: a = agent_beacon_greedy(w); break;
    case AgentKind::FocusFire: a = agent_focus_fire(w); break;
  }
  if (is_pilot(env.config().profile)) return to_flat(a, w);
  return a;
}

EpisodeResult run_episode(AgentKind agent, const EnvConfig& config) {
  Environment env;
  StepResult r = env.reset(config);
  Policy policy(agent, config.seed);
  EpisodeResult out;
  while (!r.done) {
    r = env.step(policy.act(env));
    out.total_reward += r.reward.total;
  }
  out.outcome = *r.outcome;
  out.steps = r.info.step;
  return out;
}

namespace {

OutcomeDistribution reduce(AgentKind agent, const EnvConfig& base, std::uint64_t seed0,
                           const std::vector<EpisodeResult>& results) {
  OutcomeDistribution d;
  d.variant = base.variant;
  d.agent = std::string(to_string(agent));
  d.profile = std::string(to_string(base.profile));
  d.seed0 = seed0;
  d.n = static_cast<int>(results.size());
  double steps = 0.0;
  double reward = 0.0;
  for (const EpisodeResult& e : results) {
    ++d.counts[static_cast<int>(e.outcome)];
    steps += e.steps;
    reward += e.total_reward;
  }
  if (d.n > 0) {
    d.mean_steps = steps / d.n;
    d.mean_reward = reward / d.n;
  }
  return d;
}

}  // namespace

OutcomeDistribution run_episodes_serial(AgentKind agent, const EnvConfig& base, int n, std::uint64_t seed0) {
  if (n < 1) throw ConfigError("episode count must be >= 1");
  base.validate();
  std::vector<EpisodeResult> results(n);
  for (int i = 0; i < n; ++i) {
    EnvConfig cfg = base;
    cfg.seed = seed0 + static_cast<std::uint64_t>(i);
    results[i] = run_episode(agent, cfg);
  }
  return reduce(agent, base, seed0, results);
}

OutcomeDistribution run_episodes(AgentKind agent, const EnvConfig& base, int n, std::uint64_t seed0) {
  if (n < 1) throw ConfigError("episode count must be >= 1");
  base.validate();
  std::vector<EpisodeResult> results(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    EnvConfig cfg = base;
    cfg.seed = seed0 + static_cast<std::uint64_t>(i);
    results[i] = run_episode(agent, cfg);
  }
  return reduce(agent, base, seed0, results);
}

}  // namespace twobridge
