#include "museum/core/message.hpp"

#include <string>

#include "museum/core/error.hpp"

namespace museum {

std::string_view to_string(Link link) { return link == Link::RF ? "RF" : "WiFi"; }

Link classify_link(int kind) {
  switch (kind) {
    case 3: case 4: case 6: case 8: case 9: case 10: case 11:
      return Link::RF;
    case 1: case 2: case 5: case 7: case 12:
      return Link::WiFi;
    case 13:
      throw Error(ErrorCode::Unclassified, "message 13 (server to internet) has no link class");
    default:
      throw Error(ErrorCode::DomainError, "message kind " + std::to_string(kind) + " outside 1..13");
  }
}

bool is_server_bound(int kind) {
  return kind == 1 || kind == 2 || kind == 5 || kind == 7 || kind == 12;
}

namespace {

void check_payload(int kind, const MessagePayload& payload) {
  auto fail = [kind](const char* why) {
    throw Error(ErrorCode::InvalidMessage, "message " + std::to_string(kind) + ": " + why);
  };
  auto need = [&]<class T>(const char* why) {
    if (!std::holds_alternative<T>(payload)) fail(why);
  };
  switch (kind) {
    case 1: need.operator()<TicketReport>("expects a ticket report"); break;
    case 2: need.operator()<LocationReport>("expects a location report"); break;
    case 3: need.operator()<TicketBeacon>("expects a ticket beacon"); break;
    case 4: need.operator()<ObjectBeacon>("expects an object beacon"); break;
    case 5:
    case 7: need.operator()<GateReport>("expects a gate report"); break;
    case 6:
    case 8:
    case 9:
    case 11: {
      need.operator()<GateSensing>("expects a gate sensing");
      const auto& sensing = std::get<GateSensing>(payload);
      const bool object_tag = sensing.tag.kind == TagKind::Object;
      if ((kind == 6 || kind == 8) && !object_tag) fail("carries an object tag");
      if ((kind == 9 || kind == 11) && object_tag) fail("carries a ticket tag");
      break;
    }
    case 10: need.operator()<TagRead>("expects a tag read"); break;
    case 12: need.operator()<SensorReading>("expects a sensor reading"); break;
    default: break;
  }
}

}  // namespace

Message::Message(int kind, Tick timestamp, MessagePayload payload)
    : kind_(kind), link_(Link::RF), timestamp_(timestamp), payload_(std::move(payload)) {
  if (kind < kMinMessageKind || kind > kMaxMessageKind) {
    // 13 gets the Unclassified error, the rest DomainError.
    classify_link(kind);
    throw Error(ErrorCode::DomainError, "message kind " + std::to_string(kind) + " is not modeled");
  }
  if (timestamp < 0) throw Error(ErrorCode::InvalidMessage, "negative message timestamp");
  link_ = classify_link(kind);
  check_payload(kind, payload_);
}

Message::Message(int kind, Link link, Tick timestamp, MessagePayload payload)
    : Message(kind, timestamp, std::move(payload)) {
  if (link != link_) {
    throw Error(ErrorCode::InvalidMessage, "message " + std::to_string(kind) + " travels over " +
                                               std::string(to_string(link_)) + ", not " +
                                               std::string(to_string(link)));
  }
}

}  // namespace museum
