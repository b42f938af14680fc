#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twobridge/actions.hpp"
#include "twobridge/engine.hpp"
#include "twobridge/obs.hpp"
#include "twobridge/reward.hpp"
#include "twobridge/spawn.hpp"

namespace twobridge {

// pilot-nsf / pilot-sf: per-unit flat actions, unmasked, pilot reward.
// exp2: structured actions, verb-level mask, free camera.
// exp3: structured actions, branch-level masks, camera locked on the group.
enum class Profile : std::uint8_t { PilotNsf, PilotSf, Exp2, Exp3 };
inline constexpr std::array<Profile, 4> kAllProfiles{Profile::PilotNsf, Profile::PilotSf, Profile::Exp2,
                                                     Profile::Exp3};

std::string_view to_string(Profile p);
Profile parse_profile(std::string_view s);  // throws ConfigError

inline bool is_pilot(Profile p) { return p == Profile::PilotNsf || p == Profile::PilotSf; }

enum class MaskKind : std::uint8_t { None, Verb, Branch };
std::string_view to_string(MaskKind k);

MaskKind mask_kind(Profile p);
CameraMode camera_mode(Profile p);

struct EnvConfig {
  std::string variant = "V2_Base";
  Profile profile = Profile::Exp2;
  std::uint64_t seed = 0;
  int ticks_per_agent_step = 8;
  int tick_limit = kDefaultTickLimit;
  // Rendering can be switched off for profiles that include spatial planes.
  bool spatial = true;
  CombatParams combat;
  RewardParams reward;

  bool has_spatial() const { return spatial && profile != Profile::PilotNsf; }
  void validate() const;  // throws ConfigError

  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

using Action = std::variant<StructuredAction, FlatAction>;

struct Observation {
  std::vector<float> vector;
  std::optional<SpatialFeatures> spatial;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StepInfo {
  int step = 0;
  std::int64_t tick = 0;
  int friendly_alive = 0;
  int enemy_alive = 0;
  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct StepResult {
  Observation observation;
  MaskKind mask_kind = MaskKind::None;
  ActionMask mask;  // meaningful branches depend on mask_kind
  RewardBreakdown reward;
  bool done = false;
  std::optional<Outcome> outcome;
  StepInfo info;
  friend bool operator==(const StepResult&, const StepResult&) = default;
};

// 64-bit FNV-1a over a canonical serialisation (fixed field order,
// coordinates rounded to 1e-6).
std::uint64_t state_hash(const WorldState& world);
std::string hash_hex(std::uint64_t h);

struct ReplayStep {
  int step = 0;
  Action action;
  RewardBreakdown reward;
  std::uint64_t hash = 0;
  std::vector<UnitState> units;
  std::optional<Outcome> outcome;
};

struct Replay {
  EnvConfig config;
  SpawnAssignment spawn;
  std::uint64_t initial_hash = 0;
  std::vector<ReplayStep> steps;
};

class Environment {
 public:
  // Rolls spawns from config.seed. Throws ConfigError for bad configs.
  StepResult reset(const EnvConfig& config);
  // Starts from a hand-built world instead of rolled spawns.
  StepResult reset(const EnvConfig& config, WorldState world);

  // Decodes the action, holds the orders for K ticks (fewer if the episode
  // ends), and returns the reward between the two agent steps. Throws
  // LifecycleError after the episode ended and ActionError for rejected
  // actions.
  StepResult step(const Action& action);

  const WorldState& world() const { return world_; }
  const EnvConfig& config() const { return config_; }
  const VariantConfig& variant() const { return *variant_; }
  const SpawnAssignment& spawn() const { return spawn_; }
  const CameraState& camera() const { return camera_; }
  bool done() const { return world_.terminated(); }
  int step_index() const { return step_; }

  // The mask the current profile enforces for the next step.
  ActionMask current_mask() const;

  void set_recording(bool on) { recording_ = on; }
  const Replay& replay() const { return replay_; }

 private:
  StepResult start(const EnvConfig& config, WorldState world);
  StepResult result(const RewardBreakdown& reward) const;
  Orders decode(const Action& action, std::uint32_t& selected) const;

  EnvConfig config_;
  const VariantConfig* variant_ = nullptr;
  SpawnAssignment spawn_;
  WorldState world_;
  CameraState camera_;
  std::uint32_t selected_ = 0;
  int step_ = 0;
  bool started_ = false;
  bool recording_ = false;
  Replay replay_;
};

// Line-delimited JSON: a header line, then one record per agent step.
void write_replay(std::ostream& out, const Replay& replay);
Replay read_replay(std::istream& in);

struct ReplayCheck {
  bool ok = false;
  int first_mismatch = -1;  // step index, or -1
  std::string message;
};

// Feeds the recorded actions into a fresh environment and compares hashes.
ReplayCheck verify_replay(const Replay& replay);

}  // namespace twobridge
