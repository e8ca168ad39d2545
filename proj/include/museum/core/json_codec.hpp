#pragma once

#include <json.hpp>

#include "museum/core/event.hpp"
#include "museum/core/types.hpp"

namespace museum {

inline constexpr int kEventSchemaVersion = 1;

nlohmann::json to_json(const Event& event);
/// Throws LogFormat on any schema mismatch.
Event event_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Alarm& alarm);
Alarm alarm_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SensorReading& reading);
SensorReading reading_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SurveyResponse& response);
SurveyResponse survey_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolarCoord& p);
nlohmann::json to_json(const HybridTag& tag);

}  // namespace museum
