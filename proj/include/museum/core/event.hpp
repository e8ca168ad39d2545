#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "museum/core/ids.hpp"
#include "museum/core/message.hpp"
#include "museum/core/types.hpp"

namespace museum {

enum class AlarmKind { TheftAtGate, LocationChange, Environmental };
enum class BoundSide { Min, Max, Forbidden };

std::string_view to_string(AlarmKind kind);
std::string_view to_string(BoundSide side);

struct GateDetail {
  ReaderId gate;
  friend bool operator==(const GateDetail&, const GateDetail&) = default;
};

struct DisplacementDetail {
  double meters = 0.0;
  friend bool operator==(const DisplacementDetail&, const DisplacementDetail&) = default;
};

struct EnvironmentDetail {
  Channel channel = Channel::Temperature;
  double value = 0.0;
  BoundSide violated = BoundSide::Max;
  double bound = 0.0;  // the violated limit; 0 for a forbidden mechanical event
  friend bool operator==(const EnvironmentDetail&, const EnvironmentDetail&) = default;
};

using AlarmDetail = std::variant<GateDetail, DisplacementDetail, EnvironmentDetail>;

struct Alarm {
  AlarmKind kind = AlarmKind::TheftAtGate;
  ObjectId subject;
  AlarmDetail detail;
  Tick timestamp = 0;
  friend bool operator==(const Alarm&, const Alarm&) = default;
};

// ---- Event bodies -------------------------------------------------------

struct TicketIssued {
  TicketId ticket;
  TagId tag;
  friend bool operator==(const TicketIssued&, const TicketIssued&) = default;
};

struct PaymentReceived {
  TicketId ticket;
  double amount = 0.0;
  friend bool operator==(const PaymentReceived&, const PaymentReceived&) = default;
};

struct LanguageChosen {
  TicketId ticket;
  std::string language;
  friend bool operator==(const LanguageChosen&, const LanguageChosen&) = default;
};

struct GateEntry {
  TicketId ticket;
  ReaderId gate;
  std::string language;
  friend bool operator==(const GateEntry&, const GateEntry&) = default;
};

struct GateExit {
  TicketId ticket;
  ReaderId gate;
  friend bool operator==(const GateExit&, const GateExit&) = default;
};

struct TagSensedAtGate {
  HybridTag tag;
  ReaderId gate;
  ObjectId object;
  friend bool operator==(const TagSensedAtGate&, const TagSensedAtGate&) = default;
};

struct ObjectInfoRead {
  TicketId ticket;
  ObjectId object;
  NodeId node;
  std::string language;
  bool fallback = false;
  friend bool operator==(const ObjectInfoRead&, const ObjectInfoRead&) = default;
};

struct VisitEnded {
  TicketId ticket;
  ObjectId object;
  Tick dwell_seconds = 0;
  friend bool operator==(const VisitEnded&, const VisitEnded&) = default;
};

struct LocationFix {
  Subject subject;
  PolarCoord fix;
  ReaderId reader;
  friend bool operator==(const LocationFix&, const LocationFix&) = default;
};

struct SensorTelemetry {
  SensorReading reading;
  friend bool operator==(const SensorTelemetry&, const SensorTelemetry&) = default;
};

struct SurveySubmitted {
  SurveyResponse response;
  std::vector<ObjectId> visited;
  friend bool operator==(const SurveySubmitted&, const SurveySubmitted&) = default;
};

struct AlarmRaised {
  Alarm alarm;
  friend bool operator==(const AlarmRaised&, const AlarmRaised&) = default;
};

struct TicketReturned {
  TicketId ticket;
  friend bool operator==(const TicketReturned&, const TicketReturned&) = default;
};

/// A rejected message or run anomaly. Never changes live state.
struct Diagnostic {
  std::string code;
  std::string detail;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using EventBody = std::variant<TicketIssued, PaymentReceived, LanguageChosen, GateEntry, GateExit,
                               TagSensedAtGate, ObjectInfoRead, VisitEnded, LocationFix,
                               SensorTelemetry, SurveySubmitted, AlarmRaised, TicketReturned,
                               Diagnostic>;

struct Event {
  std::uint64_t seq = 0;
  Tick timestamp = 0;
  EventBody body;

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&body);
  }

  friend bool operator==(const Event&, const Event&) = default;
};

std::string_view event_kind_name(const EventBody& body);

}  // namespace museum
