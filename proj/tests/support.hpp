#pragma once
// Test-side oracles. Each one is written from the rules directly and shares
// no code with the library routine it checks.

#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "twobridge/env.hpp"

namespace oracle {

using namespace twobridge;

// Geometry of the standard map, restated from the layout numbers.
inline constexpr int kCliffFirst = 31;
inline constexpr int kCliffLast = 32;
inline constexpr std::array<std::pair<int, int>, 2> kBridgeRows{{{20, 23}, {41, 44}}};

inline bool expected_passable(int x, int y) {
  if (x < kCliffFirst || x > kCliffLast) return true;
  for (auto [lo, hi] : kBridgeRows) {
    if (y >= lo && y < hi) return true;
  }
  return false;
}

// Component label per cell (-1 for blocked or removed cells).
inline std::vector<int> components(const TerrainGrid& g, bool eight, const std::set<Cell>& removed = {}) {
  const int w = g.width(), h = g.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  auto open = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h && g.passable(Cell{x, y}) && !removed.contains(Cell{x, y});
  };
  int next = 0;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!open(x0, y0) || label[y0 * w + x0] >= 0) continue;
      std::vector<std::pair<int, int>> stack{{x0, y0}};
      label[y0 * w + x0] = next;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
            const int nx = x + dx, ny = y + dy;
            if (open(nx, ny) && label[ny * w + nx] < 0) {
              label[ny * w + nx] = next;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      ++next;
    }
  }
  return label;
}

// Single-source shortest paths over 8-connected cells, cardinal cost 1,
// diagonal sqrt(2), diagonals only when both side cells are open.
inline std::vector<double> distances_from(const TerrainGrid& g, Cell src) {
  const int w = g.width(), h = g.height();
  std::vector<double> dist(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity());
  if (!g.passable(src)) return dist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src.y * w + src.x] = 0.0;
  pq.push({0.0, src.y * w + src.x});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const int x = i % w, y = i / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell n{x + dx, y + dy};
        if (!g.passable(n)) continue;
        if (dx != 0 && dy != 0 && (!g.passable(Cell{x + dx, y}) || !g.passable(Cell{x, y + dy}))) continue;
        const double nd = d + ((dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0);
        if (nd < dist[n.y * w + n.x]) {
          dist[n.y * w + n.x] = nd;
          pq.push({nd, n.y * w + n.x});
        }
      }
    }
  }
  return dist;
}

// Every cell a segment passes through, by dense sampling. Conservative
// helper for line-of-sight checks.
inline bool sampled_clear(const TerrainGrid& g, Vec2 a, Vec2 b, int samples = 4000) {
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    if (!g.passable(Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)})) return false;
  }
  return true;
}

// Legality from the branch rules: NoOp needs its verb bit only; Move and
// Attack need a non-empty selection inside the who mask plus a legal
// direction or target (absent target = the trailing null entry).
inline bool legal(const StructuredAction& a, const ActionMask& m) {
  const int v = static_cast<int>(a.verb);
  if (!m.verb[v]) return false;
  if (a.verb == Verb::NoOp) return true;
  if (a.who == 0) return false;
  for (int i = 0; i < 32; ++i) {
    if ((a.who >> i & 1u) && (i >= static_cast<int>(m.who.size()) || !m.who[i])) return false;
  }
  if (a.verb == Verb::Move) return m.direction[static_cast<int>(a.direction)];
  const int idx = a.enemy_idx.value_or(static_cast<int>(m.enemy.size()) - 1);
  return idx >= 0 && idx < static_cast<int>(m.enemy.size()) && m.enemy[idx];
}

// Brute-force size of the legal set: every (verb, who, direction, target)
// combination, with NoOp counted once.
inline std::uint64_t brute_force_count(const ActionMask& m) {
  std::uint64_t n = m.verb[0] ? 1 : 0;
  const int slots = static_cast<int>(m.who.size());
  for (std::uint32_t who = 1; who < (1u << slots); ++who) {
    for (int d = 0; d < kNumDirections; ++d) n += legal({Verb::Move, who, static_cast<Direction>(d), std::nullopt}, m);
    for (int t = 0; t + 1 < static_cast<int>(m.enemy.size()); ++t) n += legal({Verb::Attack, who, Direction::N, t}, m);
    n += legal({Verb::Attack, who, Direction::N, std::nullopt}, m);
  }
  return n;
}

// A world reached by random play: random variant, then `steps` uniformly
// drawn legal actions (stops early at episode end).
inline WorldState random_world(std::uint64_t seed, int steps) {
  Rng rng(seed);
  EnvConfig cfg;
  cfg.variant = variant_catalog()[rng.index(9)].id;
  cfg.profile = Profile::Exp3;
  cfg.seed = seed;
  cfg.spatial = false;
  Environment env;
  env.reset(cfg);
  for (int k = 0; k < steps && !env.done(); ++k) {
    const ActionMask m = branch_mask(env.world());
    env.step(legal_action_at(m, rng.below(count_legal(m))));
  }
  return env.world();
}

}  // namespace oracle
