#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twobridge {

// Continuous world coordinates. x grows east, y grows south (row order), so
// cell (x, y) covers [x, x+1) x [y, y+1).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

using Position = Vec2;

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(Cell, Cell) = default;
};

inline Vec2 center_of(Cell c) { return {c.x + 0.5, c.y + 0.5}; }

enum class Team : std::uint8_t { Friendly, Enemy };

// Compass order matches the flat action codes 1..8.
enum class Direction : std::uint8_t { N, NE, E, SE, S, SW, W, NW };
inline constexpr int kNumDirections = 8;

inline Vec2 unit_vector(Direction d) {
  constexpr double r = 0.70710678118654752440;
  constexpr std::array<Vec2, kNumDirections> table{{
      {0.0, -1.0}, {r, -r}, {1.0, 0.0}, {r, r},
      {0.0, 1.0}, {-r, r}, {-1.0, 0.0}, {-r, -r},
  }};
  return table[static_cast<int>(d)];
}

std::string_view to_string(Direction d);

enum class Outcome : std::uint8_t {
  NavigationVictory,
  CombatVictory,
  CombatLoss,
  Tie,
  TimeoutLoss,
};
inline constexpr int kNumOutcomes = 5;
inline constexpr std::array<Outcome, kNumOutcomes> kAllOutcomes{
    Outcome::NavigationVictory, Outcome::CombatVictory, Outcome::CombatLoss,
    Outcome::Tie, Outcome::TimeoutLoss};

std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view s);

// Error taxonomy. Everything derives from std::runtime_error so callers that
// only care about "it failed" can catch one type.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LifecycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ActionErrorCode : std::uint8_t {
  InvalidVerb,
  InvalidSelection,
  InvalidDirection,
  InvalidTarget,
  InvalidAction,
};

std::string_view to_string(ActionErrorCode c);

class ActionError : public std::runtime_error {
 public:
  ActionError(ActionErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ActionErrorCode code() const { return code_; }

 private:
  ActionErrorCode code_;
};

}  // namespace twobridge
