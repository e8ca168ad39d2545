#include "museum/core/event.hpp"

namespace museum {

std::string_view to_string(AlarmKind kind) {
  switch (kind) {
    case AlarmKind::TheftAtGate: return "TheftAtGate";
    case AlarmKind::LocationChange: return "LocationChange";
    case AlarmKind::Environmental: return "Environmental";
  }
  return "unknown";
}

std::string_view to_string(BoundSide side) {
  switch (side) {
    case BoundSide::Min: return "min";
    case BoundSide::Max: return "max";
    case BoundSide::Forbidden: return "forbidden";
  }
  return "unknown";
}

namespace {

template <class>
inline constexpr const char* kEventName = "";
template <> inline constexpr const char* kEventName<TicketIssued> = "TicketIssued";
template <> inline constexpr const char* kEventName<PaymentReceived> = "PaymentReceived";
template <> inline constexpr const char* kEventName<LanguageChosen> = "LanguageChosen";
template <> inline constexpr const char* kEventName<GateEntry> = "GateEntry";
template <> inline constexpr const char* kEventName<GateExit> = "GateExit";
template <> inline constexpr const char* kEventName<TagSensedAtGate> = "TagSensedAtGate";
template <> inline constexpr const char* kEventName<ObjectInfoRead> = "ObjectInfoRead";
template <> inline constexpr const char* kEventName<VisitEnded> = "VisitEnded";
template <> inline constexpr const char* kEventName<LocationFix> = "LocationFix";
template <> inline constexpr const char* kEventName<SensorTelemetry> = "SensorTelemetry";
template <> inline constexpr const char* kEventName<SurveySubmitted> = "SurveySubmitted";
template <> inline constexpr const char* kEventName<AlarmRaised> = "AlarmRaised";
template <> inline constexpr const char* kEventName<TicketReturned> = "TicketReturned";
template <> inline constexpr const char* kEventName<Diagnostic> = "Diagnostic";

}  // namespace

std::string_view event_kind_name(const EventBody& body) {
  return std::visit([](const auto& b) -> std::string_view {
    return kEventName<std::decay_t<decltype(b)>>;
  }, body);
}

}  // namespace museum
