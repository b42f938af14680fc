#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "twobridge/codec.hpp"

namespace twobridge {

inline constexpr std::string_view kProtocolVersion = "twobridge/1";

enum class MessageKind : std::uint8_t { Hello, Spec, Reset, Step, Result, Error, Close };
std::string_view to_string(MessageKind k);
std::optional<MessageKind> parse_message_kind(std::string_view s);

// One line on the wire: {"id": ..., "kind": ..., "payload": {...}}.
struct Message {
  MessageKind kind = MessageKind::Hello;
  std::optional<std::int64_t> id;  // null only on errors for unparseable requests
  json payload = json::object();
  friend bool operator==(const Message&, const Message&) = default;
};

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(std::string code, const std::string& what, std::optional<std::int64_t> id = std::nullopt)
      : std::runtime_error(what), code_(std::move(code)), id_(id) {}
  const std::string& code() const { return code_; }
  std::optional<std::int64_t> id() const { return id_; }

 private:
  std::string code_;
  std::optional<std::int64_t> id_;
};

// Single line, no trailing newline.
std::string encode_message(const Message& m);
// Throws ProtocolError("parse_error" | "bad_request" | "unknown_kind").
Message decode_message(std::string_view line);

enum class SeedPolicy : std::uint8_t { Fixed, Sequential };
std::string_view to_string(SeedPolicy p);
SeedPolicy parse_seed_policy(std::string_view s);  // throws ConfigError

struct ServerOptions {
  std::string variant = "V2_Base";
  Profile profile = Profile::Exp2;
  std::uint64_t seed = 0;
  // Fixed: every reset without an explicit seed uses `seed`.
  // Sequential: the n-th such reset on a connection uses seed + n.
  SeedPolicy seed_policy = SeedPolicy::Sequential;
  PlaneEncoding encoding = PlaneEncoding::Base64;
};

// Reset body. Absent fields fall back to the server options.
struct ResetRequest {
  std::optional<std::string> variant;
  std::optional<Profile> profile;
  std::optional<std::uint64_t> seed;
  std::optional<bool> spatial;
  std::optional<PlaneEncoding> encoding;
  friend bool operator==(const ResetRequest&, const ResetRequest&) = default;
};

void to_json(json& j, const ResetRequest& r);
void from_json(const json& j, ResetRequest& r);

struct ErrorBody {
  std::string code;
  std::string message;
  std::optional<std::string> action_error;  // set for rejected actions
  friend bool operator==(const ErrorBody&, const ErrorBody&) = default;
};

void to_json(json& j, const ErrorBody& e);
void from_json(const json& j, ErrorBody& e);

// Body of the spec response: catalog, profiles and schemas.
json spec_payload(const ServerOptions& options);

// Protocol state for one connection: one environment, strictly sequential.
class Session {
 public:
  explicit Session(ServerOptions options);

  // Exactly one response line per input line (never throws).
  std::string handle(std::string_view line);
  Message handle(const Message& request);

  bool closed() const { return closed_; }
  const Environment& environment() const { return env_; }

 private:
  Message reply(MessageKind kind, std::int64_t id, json payload) const;
  Message on_reset(std::int64_t id, const json& payload);
  Message on_step(std::int64_t id, const json& payload);

  ServerOptions options_;
  Environment env_;
  bool has_env_ = false;
  PlaneEncoding encoding_;
  std::uint64_t resets_ = 0;
  std::optional<std::int64_t> last_id_;
  bool closed_ = false;
};

}  // namespace twobridge
