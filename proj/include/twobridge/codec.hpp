#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "twobridge/env.hpp"

namespace twobridge {

using json = nlohmann::json;

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);  // throws std::invalid_argument

enum class PlaneEncoding : std::uint8_t { Base64, Array };

void to_json(json& j, const StructuredAction& a);
void from_json(const json& j, StructuredAction& a);
void to_json(json& j, const FlatAction& a);
void from_json(const json& j, FlatAction& a);

json action_to_json(const Action& a);
// Objects with "codes" are flat actions, everything else structured.
Action action_from_json(const json& j);

void to_json(json& j, const RewardBreakdown& r);
void from_json(const json& j, RewardBreakdown& r);
void to_json(json& j, const CombatParams& p);
void from_json(const json& j, CombatParams& p);
void to_json(json& j, const RewardParams& p);
void from_json(const json& j, RewardParams& p);
void to_json(json& j, const EnvConfig& c);
void from_json(const json& j, EnvConfig& c);
void to_json(json& j, const SpawnAssignment& s);
void from_json(const json& j, SpawnAssignment& s);
void to_json(json& j, const UnitState& u);
void from_json(const json& j, UnitState& u);
void to_json(json& j, const VariantConfig& v);

json mask_to_json(MaskKind kind, const ActionMask& mask);
void mask_from_json(const json& j, MaskKind& kind, ActionMask& mask);

json encode_step_result(const StepResult& r, PlaneEncoding encoding = PlaneEncoding::Base64);
StepResult decode_step_result(const json& j);

// Machine-readable catalog of the nine variants.
json variant_catalog_json();

}  // namespace twobridge
