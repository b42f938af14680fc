#include "twobridge/codec.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace twobridge {

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(n);
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length must be a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw std::invalid_argument("invalid base64 data");
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

namespace {

Verb parse_verb(const std::string& s) {
  if (s == "noop") return Verb::NoOp;
  if (s == "move") return Verb::Move;
  if (s == "attack") return Verb::Attack;
  throw std::invalid_argument("unknown verb '" + s + "'");
}

Direction parse_direction(const json& j) {
  if (j.is_number_integer()) {
    const int d = j.get<int>();
    if (d < 0 || d >= kNumDirections) throw std::invalid_argument("direction out of range");
    return static_cast<Direction>(d);
  }
  const auto s = j.get<std::string>();
  for (int d = 0; d < kNumDirections; ++d) {
    if (to_string(static_cast<Direction>(d)) == s) return static_cast<Direction>(d);
  }
  throw std::invalid_argument("unknown direction '" + s + "'");
}

template <typename Flags>
json flags_json(const Flags& flags) {
  json a = json::array();
  for (bool b : flags) a.push_back(b);
  return a;
}

json plane_json(const std::vector<std::uint8_t>& data, int channels, PlaneEncoding enc) {
  json p;
  p["shape"] = {channels, kSpatialResolution, kSpatialResolution};
  if (enc == PlaneEncoding::Base64) {
    p["data"] = base64_encode(data);
  } else {
    p["data"] = data;
  }
  return p;
}

std::vector<std::uint8_t> plane_from_json(const json& p, const std::string& encoding, int channels) {
  std::vector<std::uint8_t> data;
  if (encoding == "base64") {
    data = base64_decode(p.at("data").get<std::string>());
  } else {
    data = p.at("data").get<std::vector<std::uint8_t>>();
  }
  if (data.size() != channels * SpatialFeatures::plane_size) throw std::invalid_argument("spatial plane has wrong size");
  return data;
}

}  // namespace

void to_json(json& j, const StructuredAction& a) {
  j = json{{"verb", to_string(a.verb)}};
  // Five slots unless higher bits are set.
  std::vector<bool> who(std::max<int>(5, std::bit_width(a.who)));
  for (std::size_t i = 0; i < who.size(); ++i) who[i] = a.who >> i & 1u;
  j["who"] = who;
  j["direction"] = static_cast<int>(a.direction);
  j["enemy_idx"] = a.enemy_idx ? json(*a.enemy_idx) : json(nullptr);
}

void from_json(const json& j, StructuredAction& a) {
  a = {};
  a.verb = parse_verb(j.at("verb").get<std::string>());
  if (auto it = j.find("who"); it != j.end()) {
    if (it->is_number_unsigned() || it->is_number_integer()) {
      a.who = it->get<std::uint32_t>();
    } else {
      const auto flags = it->get<std::vector<bool>>();
      if (flags.size() > 32) throw std::invalid_argument("selection too long");
      for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i]) a.who |= 1u << i;
      }
    }
  }
  if (auto it = j.find("direction"); it != j.end() && !it->is_null()) a.direction = parse_direction(*it);
  if (auto it = j.find("enemy_idx"); it != j.end() && !it->is_null()) a.enemy_idx = it->get<int>();
}

void to_json(json& j, const FlatAction& a) { j = json{{"codes", a.codes}}; }
void from_json(const json& j, FlatAction& a) { a.codes = j.at("codes").get<std::vector<int>>(); }

json action_to_json(const Action& a) {
  return std::visit([](const auto& x) { return json(x); }, a);
}

Action action_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("action must be an object");
  if (j.contains("codes")) return j.get<FlatAction>();
  return j.get<StructuredAction>();
}

void to_json(json& j, const RewardBreakdown& r) {
  j = json{{"nav", r.nav},     {"combat_dist", r.combat_dist}, {"combat_hp", r.combat_hp},
           {"combat_events", r.combat_events}, {"terminal", r.terminal}, {"total", r.total}};
}

void from_json(const json& j, RewardBreakdown& r) {
  r.nav = j.at("nav").get<double>();
  r.combat_dist = j.at("combat_dist").get<double>();
  r.combat_hp = j.at("combat_hp").get<double>();
  r.combat_events = j.at("combat_events").get<double>();
  r.terminal = j.at("terminal").get<double>();
  r.total = j.at("total").get<double>();
}

void to_json(json& j, const CombatParams& p) {
  j = json{{"max_hp", p.max_hp},
           {"damage_per_shot", p.damage_per_shot},
           {"attack_range", p.attack_range},
           {"cooldown_ticks", p.cooldown_ticks},
           {"move_speed", p.move_speed},
           {"acquisition_range", p.acquisition_range},
           {"unit_radius", p.unit_radius},
           {"capture_radius", p.capture_radius}};
}

void from_json(const json& j, CombatParams& p) {
  p = {};
  p.max_hp = j.value("max_hp", p.max_hp);
  p.damage_per_shot = j.value("damage_per_shot", p.damage_per_shot);
  p.attack_range = j.value("attack_range", p.attack_range);
  p.cooldown_ticks = j.value("cooldown_ticks", p.cooldown_ticks);
  p.move_speed = j.value("move_speed", p.move_speed);
  p.acquisition_range = j.value("acquisition_range", p.acquisition_range);
  p.unit_radius = j.value("unit_radius", p.unit_radius);
  p.capture_radius = j.value("capture_radius", p.capture_radius);
}

void to_json(json& j, const RewardParams& p) {
  const auto& t = p.terminal_table;
  j = json{{"hp_scale", p.hp_scale},
           {"kill_bonus", p.kill_bonus},
           {"casualty_penalty", p.casualty_penalty},
           {"dist_scale", p.dist_scale},
           {"terminal",
            {{"navigation_victory", t.navigation_victory},
             {"combat_victory", t.combat_victory},
             {"combat_loss", t.combat_loss},
             {"timeout_loss", t.timeout_loss},
             {"tie", t.tie}}}};
}

void from_json(const json& j, RewardParams& p) {
  p = {};
  p.hp_scale = j.value("hp_scale", p.hp_scale);
  p.kill_bonus = j.value("kill_bonus", p.kill_bonus);
  p.casualty_penalty = j.value("casualty_penalty", p.casualty_penalty);
  p.dist_scale = j.value("dist_scale", p.dist_scale);
  if (auto it = j.find("terminal"); it != j.end()) {
    auto& t = p.terminal_table;
    t.navigation_victory = it->value("navigation_victory", t.navigation_victory);
    t.combat_victory = it->value("combat_victory", t.combat_victory);
    t.combat_loss = it->value("combat_loss", t.combat_loss);
    t.timeout_loss = it->value("timeout_loss", t.timeout_loss);
    t.tie = it->value("tie", t.tie);
  }
}

void to_json(json& j, const EnvConfig& c) {
  j = json{{"variant", c.variant},
           {"profile", to_string(c.profile)},
           {"seed", c.seed},
           {"ticks_per_agent_step", c.ticks_per_agent_step},
           {"tick_limit", c.tick_limit},
           {"spatial", c.spatial},
           {"combat", c.combat},
           {"reward", c.reward}};
}

void from_json(const json& j, EnvConfig& c) {
  c = {};
  c.variant = j.value("variant", c.variant);
  if (auto it = j.find("profile"); it != j.end()) c.profile = parse_profile(it->get<std::string>());
  c.seed = j.value("seed", c.seed);
  c.ticks_per_agent_step = j.value("ticks_per_agent_step", c.ticks_per_agent_step);
  c.tick_limit = j.value("tick_limit", c.tick_limit);
  c.spatial = j.value("spatial", c.spatial);
  if (auto it = j.find("combat"); it != j.end()) c.combat = it->get<CombatParams>();
  if (auto it = j.find("reward"); it != j.end()) c.reward = it->get<RewardParams>();
}

namespace {
json position_json(Position p) { return json::array({p.x, p.y}); }
Position position_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
RegionId region_from(const json& j) {
  const auto s = j.get<std::string>();
  for (int i = 1; i <= kNumRegions; ++i) {
    if (to_string(static_cast<RegionId>(i)) == s) return static_cast<RegionId>(i);
  }
  throw std::invalid_argument("unknown region '" + s + "'");
}
}  // namespace

void to_json(json& j, const SpawnAssignment& s) {
  json friendly = json::array();
  for (Position p : s.friendly_positions) friendly.push_back(position_json(p));
  json enemy = json::array();
  for (Position p : s.enemy_positions) enemy.push_back(position_json(p));
  j = json{{"p1_region", to_string(s.p1_region)},
           {"p2_region", to_string(s.p2_region)},
           {"beacon_region", to_string(s.beacon_region)},
           {"friendly_positions", friendly},
           {"enemy_positions", enemy},
           {"beacon_position", position_json(s.beacon_position)},
           {"camera_initial", position_json(s.camera_initial)}};
}

void from_json(const json& j, SpawnAssignment& s) {
  s = {};
  s.p1_region = region_from(j.at("p1_region"));
  s.p2_region = region_from(j.at("p2_region"));
  s.beacon_region = region_from(j.at("beacon_region"));
  for (const auto& p : j.at("friendly_positions")) s.friendly_positions.push_back(position_from(p));
  for (const auto& p : j.at("enemy_positions")) s.enemy_positions.push_back(position_from(p));
  s.beacon_position = position_from(j.at("beacon_position"));
  s.camera_initial = position_from(j.at("camera_initial"));
}

void to_json(json& j, const UnitState& u) {
  json order{{"kind", u.order.kind == OrderKind::NoOp ? "noop" : (u.order.kind == OrderKind::Move ? "move" : "attack")}};
  if (u.order.kind == OrderKind::Move) order["direction"] = static_cast<int>(u.order.direction);
  if (u.order.kind == OrderKind::Attack) order["target"] = u.order.target;
  j = json{{"id", u.id},
           {"team", u.team == Team::Friendly ? "friendly" : "enemy"},
           {"pos", position_json(u.pos)},
           {"hp", u.hp},
           {"cooldown", u.cooldown},
           {"alive", u.alive},
           {"provoked", u.provoked},
           {"order", order}};
}

void from_json(const json& j, UnitState& u) {
  u = {};
  u.id = j.at("id").get<int>();
  u.team = j.at("team").get<std::string>() == "friendly" ? Team::Friendly : Team::Enemy;
  u.pos = position_from(j.at("pos"));
  u.hp = j.at("hp").get<int>();
  u.cooldown = j.at("cooldown").get<int>();
  u.alive = j.at("alive").get<bool>();
  u.provoked = j.at("provoked").get<bool>();
  const auto& order = j.at("order");
  const auto kind = order.at("kind").get<std::string>();
  if (kind == "move") u.order = Order::move(parse_direction(order.at("direction")));
  if (kind == "attack") u.order = Order::attack(order.at("target").get<int>());
}

void to_json(json& j, const VariantConfig& v) {
  j = json{{"id", v.id},
           {"friendly_count", v.friendly_count},
           {"enemy_count", v.enemy_count},
           {"layout", to_string(v.layout)}};
}

json mask_to_json(MaskKind kind, const ActionMask& m) {
  json j{{"kind", to_string(kind)}};
  if (kind == MaskKind::None) return j;
  j["verb"] = flags_json(m.verb);
  if (kind == MaskKind::Verb) return j;
  j["who"] = flags_json(m.who);
  j["direction"] = flags_json(m.direction);
  j["enemy"] = flags_json(m.enemy);
  return j;
}

void mask_from_json(const json& j, MaskKind& kind, ActionMask& m) {
  m = {};
  const auto k = j.at("kind").get<std::string>();
  if (k == "none") {
    kind = MaskKind::None;
    return;
  }
  const auto verb = j.at("verb").get<std::vector<bool>>();
  if (verb.size() != kNumVerbs) throw std::invalid_argument("verb mask must have 3 entries");
  std::copy(verb.begin(), verb.end(), m.verb.begin());
  if (k == "verb") {
    kind = MaskKind::Verb;
    return;
  }
  if (k != "branch") throw std::invalid_argument("unknown mask kind '" + k + "'");
  kind = MaskKind::Branch;
  m.who = j.at("who").get<std::vector<bool>>();
  const auto dir = j.at("direction").get<std::vector<bool>>();
  if (dir.size() != kNumDirections) throw std::invalid_argument("direction mask must have 8 entries");
  std::copy(dir.begin(), dir.end(), m.direction.begin());
  m.enemy = j.at("enemy").get<std::vector<bool>>();
}

json encode_step_result(const StepResult& r, PlaneEncoding encoding) {
  json obs{{"vector", r.observation.vector}};
  if (r.observation.spatial) {
    obs["spatial"] = {
        {"encoding", encoding == PlaneEncoding::Base64 ? "base64" : "array"},
        {"screen", plane_json(r.observation.spatial->screen, kScreenChannels, encoding)},
        {"minimap", plane_json(r.observation.spatial->minimap, kMinimapChannels, encoding)},
    };
  }
  return json{{"observation", obs},
              {"mask", mask_to_json(r.mask_kind, r.mask)},
              {"reward", r.reward},
              {"done", r.done},
              {"outcome", r.outcome ? json(to_string(*r.outcome)) : json(nullptr)},
              {"info",
               {{"step", r.info.step},
                {"tick", r.info.tick},
                {"friendly_alive", r.info.friendly_alive},
                {"enemy_alive", r.info.enemy_alive}}}};
}

StepResult decode_step_result(const json& j) {
  StepResult r;
  const auto& obs = j.at("observation");
  r.observation.vector = obs.at("vector").get<std::vector<float>>();
  if (auto it = obs.find("spatial"); it != obs.end()) {
    const auto encoding = it->at("encoding").get<std::string>();
    SpatialFeatures s;
    s.screen = plane_from_json(it->at("screen"), encoding, kScreenChannels);
    s.minimap = plane_from_json(it->at("minimap"), encoding, kMinimapChannels);
    r.observation.spatial = std::move(s);
  }
  mask_from_json(j.at("mask"), r.mask_kind, r.mask);
  r.reward = j.at("reward").get<RewardBreakdown>();
  r.done = j.at("done").get<bool>();
  if (const auto& o = j.at("outcome"); !o.is_null()) {
    r.outcome = parse_outcome(o.get<std::string>());
    if (!r.outcome) throw std::invalid_argument("unknown outcome");
  }
  const auto& info = j.at("info");
  r.info.step = info.at("step").get<int>();
  r.info.tick = info.at("tick").get<std::int64_t>();
  r.info.friendly_alive = info.at("friendly_alive").get<int>();
  r.info.enemy_alive = info.at("enemy_alive").get<int>();
  return r;
}

json variant_catalog_json() {
  json variants = json::array();
  for (const auto& v : variant_catalog()) {
    json e = v;
    e["vector_length"] = vector_length(v.friendly_count, v.enemy_count);
    e["flat_actions"] = flat_action_count(v.enemy_count);
    variants.push_back(e);
  }
  return json{{"variants", variants}};
}

}  // namespace twobridge
