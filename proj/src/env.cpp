#include "twobridge/env.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "twobridge/codec.hpp"

namespace twobridge {

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::PilotNsf: return "pilot-nsf";
    case Profile::PilotSf: return "pilot-sf";
    case Profile::Exp2: return "exp2";
    case Profile::Exp3: return "exp3";
  }
  return "?";
}

Profile parse_profile(std::string_view s) {
  for (Profile p : kAllProfiles) {
    if (to_string(p) == s) return p;
  }
  throw ConfigError("unknown profile '" + std::string(s) + "'");
}

std::string_view to_string(MaskKind k) {
  switch (k) {
    case MaskKind::None: return "none";
    case MaskKind::Verb: return "verb";
    case MaskKind::Branch: return "branch";
  }
  return "?";
}

MaskKind mask_kind(Profile p) {
  switch (p) {
    case Profile::Exp2: return MaskKind::Verb;
    case Profile::Exp3: return MaskKind::Branch;
    default: return MaskKind::None;
  }
}

CameraMode camera_mode(Profile p) { return p == Profile::Exp3 ? CameraMode::Locked : CameraMode::Free; }

void EnvConfig::validate() const {
  find_variant(variant);
  if (ticks_per_agent_step < 1) throw ConfigError("ticks_per_agent_step must be >= 1");
  if (tick_limit < 1) throw ConfigError("tick_limit must be >= 1");
  combat.validate();
  if (reward.hp_scale <= 0 || reward.kill_bonus <= 0 || reward.casualty_penalty <= 0 || reward.dist_scale <= 0) {
    throw ConfigError("reward scales must be positive");
  }
  if (reward.terminal_table != TerminalTable{}) throw ConfigError("the terminal reward table is fixed");
}

// --- hashing ---------------------------------------------------------------

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void i64(std::int64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(static_cast<std::uint64_t>(v) >> (8 * i));
    bytes(b, 8);
  }
  void coord(double v) { i64(std::llround(v * 1e6)); }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t state_hash(const WorldState& w) {
  Fnv1a h;
  h.i64(w.tick);
  h.i64(w.tick_limit);
  h.i64(w.friendly_count);
  h.i64(w.enemy_count);
  for (const UnitState& u : w.units) {
    h.i64(u.id);
    h.i64(static_cast<int>(u.team));
    h.coord(u.pos.x);
    h.coord(u.pos.y);
    h.i64(u.hp);
    h.i64(u.cooldown);
    h.i64(u.alive);
    h.i64(u.provoked);
    h.i64(static_cast<int>(u.order.kind));
    h.i64(static_cast<int>(u.order.direction));
    h.i64(u.order.target);
  }
  h.coord(w.beacon.x);
  h.coord(w.beacon.y);
  h.i64(w.outcome ? static_cast<int>(*w.outcome) : -1);
  return h.value();
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- environment -----------------------------------------------------------

StepResult Environment::reset(const EnvConfig& config) {
  config.validate();
  const VariantConfig& v = find_variant(config.variant);
  Rng rng(config.seed);
  SpawnAssignment spawn = roll_spawns(v, rng, config.combat.unit_radius);
  WorldState world = make_world(two_bridge_grid(), spawn, config.combat, config.tick_limit);
  spawn_ = std::move(spawn);
  return start(config, std::move(world));
}

StepResult Environment::reset(const EnvConfig& config, WorldState world) {
  config.validate();
  spawn_ = SpawnAssignment{};
  for (int i = 0; i < world.friendly_count; ++i) spawn_.friendly_positions.push_back(world.friendly(i).pos);
  for (int j = 0; j < world.enemy_count; ++j) spawn_.enemy_positions.push_back(world.enemy(j).pos);
  spawn_.beacon_position = world.beacon;
  spawn_.camera_initial = centroid(spawn_.friendly_positions);
  return start(config, std::move(world));
}

StepResult Environment::start(const EnvConfig& config, WorldState world) {
  config_ = config;
  variant_ = &find_variant(config.variant);
  world_ = std::move(world);
  camera_ = CameraState{camera_mode(config.profile), spawn_.camera_initial, kScreenExtent};
  camera_ = update_camera(camera_, world_);
  selected_ = 0;
  step_ = 0;
  started_ = true;
  replay_ = Replay{config_, spawn_, state_hash(world_), {}};
  return result(RewardBreakdown{});
}

ActionMask Environment::current_mask() const {
  switch (mask_kind(config_.profile)) {
    case MaskKind::Branch: return branch_mask(world_);
    case MaskKind::Verb: return verb_only_mask(world_);
    case MaskKind::None: break;
  }
  return ActionMask{};
}

Orders Environment::decode(const Action& action, std::uint32_t& selected) const {
  if (is_pilot(config_.profile)) {
    const auto* flat = std::get_if<FlatAction>(&action);
    if (!flat) throw ActionError(ActionErrorCode::InvalidAction, "pilot profiles take per-unit codes");
    Orders orders = decode_flat(*flat, world_);
    selected = 0;
    for (int i = 0; i < world_.friendly_count; ++i) {
      if (orders[i].kind != OrderKind::NoOp) selected |= 1u << i;
    }
    return orders;
  }
  const auto* structured = std::get_if<StructuredAction>(&action);
  if (!structured) throw ActionError(ActionErrorCode::InvalidAction, "this profile takes structured actions");
  Orders orders = decode_structured(*structured, current_mask(), world_);
  selected = structured->verb == Verb::NoOp ? 0u : structured->who;
  return orders;
}

StepResult Environment::step(const Action& action) {
  if (!started_) throw LifecycleError("step before reset");
  if (world_.terminated()) throw LifecycleError("step after episode end");

  std::uint32_t selected = 0;
  const Orders orders = decode(action, selected);
  const WorldState prev = world_;
  for (int k = 0; k < config_.ticks_per_agent_step && !world_.terminated(); ++k) advance(world_, orders);

  const RewardBreakdown reward =
      is_pilot(config_.profile) ? pilot_reward(prev, world_) : shaped_reward(prev, world_, config_.reward);
  selected_ = selected;
  camera_ = update_camera(camera_, world_);
  ++step_;
  if (recording_) {
    replay_.steps.push_back({step_, action, reward, state_hash(world_), world_.units, world_.outcome});
  }
  return result(reward);
}

StepResult Environment::result(const RewardBreakdown& reward) const {
  StepResult r;
  r.observation.vector = build_vector(world_);
  if (config_.has_spatial()) r.observation.spatial = render_spatial(world_, camera_, selected_);
  r.mask_kind = mask_kind(config_.profile);
  if (r.mask_kind == MaskKind::Branch) {
    r.mask = branch_mask(world_);
  } else if (r.mask_kind == MaskKind::Verb) {
    r.mask.verb = verb_mask(world_);
  }
  r.reward = reward;
  r.done = world_.terminated();
  r.outcome = world_.outcome;
  r.info = {step_, world_.tick, world_.friendly_alive(), world_.enemy_alive()};
  return r;
}

// --- replay ----------------------------------------------------------------

void write_replay(std::ostream& out, const Replay& replay) {
  json header{{"type", "header"},
              {"config", replay.config},
              {"spawn", replay.spawn},
              {"initial_hash", hash_hex(replay.initial_hash)}};
  out << header.dump() << '\n';
  for (const ReplayStep& s : replay.steps) {
    json rec{{"type", "step"},
             {"step", s.step},
             {"action", action_to_json(s.action)},
             {"reward", s.reward},
             {"hash", hash_hex(s.hash)},
             {"units", s.units},
             {"outcome", s.outcome ? json(to_string(*s.outcome)) : json(nullptr)}};
    out << rec.dump() << '\n';
  }
}

Replay read_replay(std::istream& in) {
  Replay replay;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (!have_header) {
      if (j.at("type") != "header") throw std::invalid_argument("replay must start with a header line");
      replay.config = j.at("config").get<EnvConfig>();
      replay.spawn = j.at("spawn").get<SpawnAssignment>();
      replay.initial_hash = std::stoull(j.at("initial_hash").get<std::string>(), nullptr, 16);
      have_header = true;
      continue;
    }
    ReplayStep s;
    s.step = j.at("step").get<int>();
    s.action = action_from_json(j.at("action"));
    s.reward = j.at("reward").get<RewardBreakdown>();
    s.hash = std::stoull(j.at("hash").get<std::string>(), nullptr, 16);
    s.units = j.at("units").get<std::vector<UnitState>>();
    if (const auto& o = j.at("outcome"); !o.is_null()) s.outcome = parse_outcome(o.get<std::string>());
    replay.steps.push_back(std::move(s));
  }
  if (!have_header) throw std::invalid_argument("empty replay");
  return replay;
}

ReplayCheck verify_replay(const Replay& replay) {
  Environment env;
  env.reset(replay.config);
  if (env.spawn() != replay.spawn || state_hash(env.world()) != replay.initial_hash) {
    return {false, 0, "initial state differs from the recorded header"};
  }
  for (const ReplayStep& s : replay.steps) {
    const StepResult r = env.step(s.action);
    if (state_hash(env.world()) != s.hash || r.reward != s.reward || env.world().units != s.units ||
        r.outcome != s.outcome) {
      return {false, s.step, "state, reward or outcome differs at step " + std::to_string(s.step)};
    }
  }
  return {true, -1, "replay reproduced " + std::to_string(replay.steps.size()) + " steps"};
}

}  // namespace twobridge
