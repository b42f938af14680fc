#include "twobridge/protocol.hpp"

#include <set>

namespace twobridge {

namespace {

constexpr std::array<MessageKind, 7> kAllKinds{MessageKind::Hello, MessageKind::Spec,  MessageKind::Reset,
                                               MessageKind::Step,  MessageKind::Result, MessageKind::Error,
                                               MessageKind::Close};

std::string_view encoding_name(PlaneEncoding e) { return e == PlaneEncoding::Base64 ? "base64" : "array"; }

PlaneEncoding parse_encoding(const std::string& s) {
  if (s == "base64") return PlaneEncoding::Base64;
  if (s == "array") return PlaneEncoding::Array;
  throw std::invalid_argument("unknown plane encoding '" + s + "'");
}

Message error_message(std::optional<std::int64_t> id, std::string code, std::string text,
                      std::optional<std::string> action_error = std::nullopt) {
  return {MessageKind::Error, id, ErrorBody{std::move(code), std::move(text), std::move(action_error)}};
}

}  // namespace

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::Hello: return "hello";
    case MessageKind::Spec: return "spec";
    case MessageKind::Reset: return "reset";
    case MessageKind::Step: return "step";
    case MessageKind::Result: return "result";
    case MessageKind::Error: return "error";
    case MessageKind::Close: return "close";
  }
  return "?";
}

std::optional<MessageKind> parse_message_kind(std::string_view s) {
  for (MessageKind k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string encode_message(const Message& m) {
  const json j{{"id", m.id ? json(*m.id) : json(nullptr)}, {"kind", to_string(m.kind)}, {"payload", m.payload}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

Message decode_message(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProtocolError("parse_error", e.what());
  }
  if (!j.is_object()) throw ProtocolError("bad_request", "message must be an object");

  Message m;
  if (auto it = j.find("id"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw ProtocolError("bad_request", "id must be an integer");
    m.id = it->get<std::int64_t>();
  }
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ProtocolError("bad_request", "missing kind", m.id);
  const auto parsed = parse_message_kind(kind->get<std::string>());
  if (!parsed) throw ProtocolError("unknown_kind", "unknown kind '" + kind->get<std::string>() + "'", m.id);
  m.kind = *parsed;
  if (auto it = j.find("payload"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ProtocolError("bad_request", "payload must be an object", m.id);
    m.payload = *it;
  }
  return m;
}

std::string_view to_string(SeedPolicy p) { return p == SeedPolicy::Fixed ? "fixed" : "sequential"; }

SeedPolicy parse_seed_policy(std::string_view s) {
  if (s == "fixed") return SeedPolicy::Fixed;
  if (s == "sequential") return SeedPolicy::Sequential;
  throw ConfigError("unknown seed policy '" + std::string(s) + "'");
}

void to_json(json& j, const ResetRequest& r) {
  j = json::object();
  if (r.variant) j["variant"] = *r.variant;
  if (r.profile) j["profile"] = to_string(*r.profile);
  if (r.seed) j["seed"] = *r.seed;
  if (r.spatial) j["spatial"] = *r.spatial;
  if (r.encoding) j["encoding"] = encoding_name(*r.encoding);
}

void from_json(const json& j, ResetRequest& r) {
  static const std::set<std::string> known{"variant", "profile", "seed", "spatial", "encoding"};
  r = {};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown reset field '" + key + "'");
  }
  if (auto it = j.find("variant"); it != j.end()) r.variant = it->get<std::string>();
  if (auto it = j.find("profile"); it != j.end()) r.profile = parse_profile(it->get<std::string>());
  if (auto it = j.find("seed"); it != j.end()) r.seed = it->get<std::uint64_t>();
  if (auto it = j.find("spatial"); it != j.end()) r.spatial = it->get<bool>();
  if (auto it = j.find("encoding"); it != j.end()) r.encoding = parse_encoding(it->get<std::string>());
}

void to_json(json& j, const ErrorBody& e) {
  j = json{{"code", e.code}, {"message", e.message}};
  if (e.action_error) j["action_error"] = *e.action_error;
}

void from_json(const json& j, ErrorBody& e) {
  e = {};
  e.code = j.at("code").get<std::string>();
  e.message = j.at("message").get<std::string>();
  if (auto it = j.find("action_error"); it != j.end()) e.action_error = it->get<std::string>();
}

json spec_payload(const ServerOptions& options) {
  json profiles = json::array();
  for (Profile p : kAllProfiles) {
    profiles.push_back({{"name", to_string(p)},
                        {"action", is_pilot(p) ? "flat" : "structured"},
                        {"mask", to_string(mask_kind(p))},
                        {"spatial", p != Profile::PilotNsf},
                        {"camera", camera_mode(p) == CameraMode::Locked ? "locked" : "free"},
                        {"reward", is_pilot(p) ? "pilot" : "shaped"}});
  }
  json outcomes = json::array();
  for (Outcome o : kAllOutcomes) outcomes.push_back(to_string(o));
  json directions = json::array();
  for (int d = 0; d < kNumDirections; ++d) directions.push_back(to_string(static_cast<Direction>(d)));
  json screen = json::array();
  for (auto name : screen_channel_names()) screen.push_back(name);
  json minimap = json::array();
  for (auto name : minimap_channel_names()) minimap.push_back(name);

  json spec = variant_catalog_json();
  spec["protocol"] = kProtocolVersion;
  spec["profiles"] = profiles;
  spec["outcomes"] = outcomes;
  spec["observation"] = {
      {"vector",
       {{"friendly_slot", {"x", "y", "hp", "cooldown", "dist_to_beacon"}},
        {"enemy_slot", {"x", "y", "hp", "cooldown"}},
        {"global", {"beacon_x", "beacon_y", "elapsed_seconds", "enemies_remaining"}}}},
      {"spatial",
       {{"dtype", "uint8"},
        {"layout", "channel-major, row-major"},
        {"screen", {{"shape", {kScreenChannels, kSpatialResolution, kSpatialResolution}}, {"channels", screen}}},
        {"minimap", {{"shape", {kMinimapChannels, kSpatialResolution, kSpatialResolution}}, {"channels", minimap}}}}}};
  spec["action"] = {
      {"structured",
       {{"verbs", {"noop", "move", "attack"}},
        {"who", "bool array indexed by friendly slot"},
        {"directions", directions},
        {"enemy_idx", "enemy slot or null to hold"}}},
      {"flat", {{"codes", "one per friendly slot: 0 noop, 1..8 move N..NW, 9+j attack enemy slot j"}}}};
  spec["timing"] = {{"ticks_per_agent_step", EnvConfig{}.ticks_per_agent_step},
                    {"ticks_per_second", kTicksPerSecond},
                    {"tick_limit", EnvConfig{}.tick_limit}};
  spec["defaults"] = {{"variant", options.variant},
                      {"profile", to_string(options.profile)},
                      {"seed", options.seed},
                      {"seed_policy", to_string(options.seed_policy)},
                      {"encoding", encoding_name(options.encoding)}};
  return spec;
}

// --- session ---------------------------------------------------------------

Session::Session(ServerOptions options) : options_(std::move(options)), encoding_(options_.encoding) {}

std::string Session::handle(std::string_view line) {
  Message response;
  try {
    response = handle(decode_message(line));
  } catch (const ProtocolError& e) {
    response = error_message(e.id(), e.code(), e.what());
  }
  return encode_message(response);
}

Message Session::reply(MessageKind kind, std::int64_t id, json payload) const {
  return {kind, id, std::move(payload)};
}

Message Session::handle(const Message& request) {
  if (!request.id) return error_message(std::nullopt, "bad_request", "requests need an integer id");
  const std::int64_t id = *request.id;
  if (closed_) return error_message(id, "lifecycle_error", "session is closed");
  if (last_id_ && id <= *last_id_) {
    return error_message(id, "id_order", "id must exceed the previous id " + std::to_string(*last_id_));
  }
  last_id_ = id;

  try {
    switch (request.kind) {
      case MessageKind::Hello:
      case MessageKind::Spec: return reply(MessageKind::Spec, id, spec_payload(options_));
      case MessageKind::Reset: return on_reset(id, request.payload);
      case MessageKind::Step: return on_step(id, request.payload);
      case MessageKind::Close:
        closed_ = true;
        return reply(MessageKind::Close, id, json::object());
      case MessageKind::Result:
      case MessageKind::Error: break;
    }
    return error_message(id, "unknown_kind", "'" + std::string(to_string(request.kind)) + "' is not a request");
  } catch (const ActionError& e) {
    return error_message(id, "action_error", e.what(), std::string(to_string(e.code())));
  } catch (const ConfigError& e) {
    return error_message(id, "config_error", e.what());
  } catch (const LifecycleError& e) {
    return error_message(id, "lifecycle_error", e.what());
  } catch (const json::exception& e) {
    return error_message(id, "bad_request", e.what());
  } catch (const std::invalid_argument& e) {
    return error_message(id, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error_message(id, "internal_error", e.what());
  }
}

Message Session::on_reset(std::int64_t id, const json& payload) {
  const auto req = payload.get<ResetRequest>();
  EnvConfig cfg;
  cfg.variant = req.variant.value_or(options_.variant);
  cfg.profile = req.profile.value_or(options_.profile);
  if (req.seed) {
    cfg.seed = *req.seed;
  } else {
    cfg.seed = options_.seed + (options_.seed_policy == SeedPolicy::Sequential ? resets_++ : 0);
  }
  cfg.spatial = req.spatial.value_or(true);
  const StepResult r = env_.reset(cfg);
  has_env_ = true;
  encoding_ = req.encoding.value_or(options_.encoding);
  json body = encode_step_result(r, encoding_);
  body["episode"] = {{"variant", cfg.variant}, {"profile", to_string(cfg.profile)}, {"seed", cfg.seed}};
  return reply(MessageKind::Result, id, std::move(body));
}

Message Session::on_step(std::int64_t id, const json& payload) {
  if (!has_env_) throw LifecycleError("step before reset");
  const Action action = action_from_json(payload.at("action"));
  return reply(MessageKind::Result, id, encode_step_result(env_.step(action), encoding_));
}

}  // namespace twobridge
