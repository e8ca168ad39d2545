#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "museum/core/ids.hpp"
#include "museum/core/types.hpp"

namespace museum {

enum class Link { RF, WiFi };

std::string_view to_string(Link link);

/// Link class of each numbered device-to-device message.
/// RF: 3, 4, 6, 8, 9, 10, 11. Wi-Fi: 1, 2, 5, 7, 12.
/// Kind 13 (server to internet) throws Unclassified; anything outside 1..13
/// throws DomainError.
Link classify_link(int kind);

inline constexpr int kMinMessageKind = 1;
inline constexpr int kMaxMessageKind = 12;

// ---- Message 1: smart ticket -> server ---------------------------------

struct TicketIssuedNote {
  TicketId ticket;
  TagId tag;
  friend bool operator==(const TicketIssuedNote&, const TicketIssuedNote&) = default;
};

struct PaymentNote {
  TicketId ticket;
  double amount = 0.0;
  friend bool operator==(const PaymentNote&, const PaymentNote&) = default;
};

struct LanguageNote {
  TicketId ticket;
  std::string language;
  friend bool operator==(const LanguageNote&, const LanguageNote&) = default;
};

/// The ticket has read an object's tag and presented its info.
struct ObjectVisitNote {
  TicketId ticket;
  ObjectId object;
  std::string language;
  bool fallback = false;
  friend bool operator==(const ObjectVisitNote&, const ObjectVisitNote&) = default;
};

struct VisitEndNote {
  TicketId ticket;
  ObjectId object;
  friend bool operator==(const VisitEndNote&, const VisitEndNote&) = default;
};

struct SurveyNote {
  SurveyResponse response;
  std::vector<ObjectId> visited;
  friend bool operator==(const SurveyNote&, const SurveyNote&) = default;
};

using TicketReport =
    std::variant<TicketIssuedNote, PaymentNote, LanguageNote, ObjectVisitNote, VisitEndNote, SurveyNote>;

// ---- Message 2: central reader -> server ------------------------------

using Subject = std::variant<ObjectId, TicketId>;

struct LocationReport {
  Subject subject;
  PolarCoord fix;
  ReaderId reader;
  friend bool operator==(const LocationReport&, const LocationReport&) = default;
};

// ---- Messages 3 and 4: tags -> central reader (RF) ---------------------

struct TicketBeacon {
  TicketId ticket;
  TagId tag;
  Position position;
  friend bool operator==(const TicketBeacon&, const TicketBeacon&) = default;
};

struct ObjectBeacon {
  ObjectId object;
  TagId tag;
  Position position;
  friend bool operator==(const ObjectBeacon&, const ObjectBeacon&) = default;
};

// ---- Messages 5 and 7: gate reader -> server ---------------------------

struct GateReport {
  ReaderId gate;
  HybridTag tag;
  std::optional<std::string> language;  // visitor entry only
  friend bool operator==(const GateReport&, const GateReport&) = default;
};

// ---- Messages 6, 8, 9, 11: tag sensed by a gate reader (RF) ------------

struct GateSensing {
  ReaderId gate;
  HybridTag tag;
  friend bool operator==(const GateSensing&, const GateSensing&) = default;
};

// ---- Message 10: object tag read by a smart ticket (RF) ----------------

struct TagRead {
  TicketId ticket;
  ObjectId object;
  TagId tag;
  friend bool operator==(const TagRead&, const TagRead&) = default;
};

// Message 12 carries a SensorReading.

using MessagePayload = std::variant<TicketReport, LocationReport, TicketBeacon, ObjectBeacon,
                                    GateReport, GateSensing, TagRead, SensorReading>;

/// One numbered message between devices. The link is always
/// classify_link(kind) and the payload alternative always matches the kind.
class Message {
 public:
  /// Throws InvalidMessage when the payload does not fit the kind.
  Message(int kind, Tick timestamp, MessagePayload payload);
  /// As above, and additionally rejects a link that differs from
  /// classify_link(kind).
  Message(int kind, Link link, Tick timestamp, MessagePayload payload);

  int kind() const noexcept { return kind_; }
  Link link() const noexcept { return link_; }
  Tick timestamp() const noexcept { return timestamp_; }
  const MessagePayload& payload() const noexcept { return payload_; }

  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }

  friend bool operator==(const Message&, const Message&) = default;

 private:
  int kind_;
  Link link_;
  Tick timestamp_;
  MessagePayload payload_;
};

/// True for the Wi-Fi kinds that terminate at the server (1, 2, 5, 7, 12).
bool is_server_bound(int kind);

}  // namespace museum
