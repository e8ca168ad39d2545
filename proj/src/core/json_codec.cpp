#include "museum/core/json_codec.hpp"

#include <string>

#include "museum/core/error.hpp"
#include "museum/core/strict_json.hpp"

namespace museum {

using nlohmann::json;

namespace {

constexpr ErrorCode kCode = ErrorCode::LogFormat;

std::string_view tag_kind_name(TagKind kind) { return kind == TagKind::Object ? "object" : "ticket"; }

TagKind tag_kind_from(const std::string& name) {
  if (name == "object") return TagKind::Object;
  if (name == "ticket") return TagKind::Ticket;
  throw Error(kCode, "unknown tag kind '" + name + "'");
}

HybridTag tag_from_json(const json& j, const std::string& path) {
  StrictObject o(j, path, kCode);
  HybridTag tag;
  tag.id = TagId(o.str("id"));
  tag.battery_charged = o.boolean("battery_charged");
  tag.kind = tag_kind_from(o.str("kind"));
  o.finish();
  return tag;
}

std::vector<ObjectId> object_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(kCode, path + " must be an array");
  std::vector<ObjectId> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(kCode, path + " entries must be strings");
    out.emplace_back(v.get<std::string>());
  }
  return out;
}

json ids_json(const std::vector<ObjectId>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

}  // namespace

json to_json(const PolarCoord& p) { return json{{"r", p.r()}, {"theta", p.theta()}}; }

json to_json(const HybridTag& tag) {
  return json{{"id", tag.id.str()},
              {"battery_charged", tag.battery_charged},
              {"kind", tag_kind_name(tag.kind)}};
}

json to_json(const SensorReading& reading) {
  json j{{"object", reading.object.str()},
         {"timestamp", reading.timestamp},
         {"mechanical_event", reading.mechanical_event}};
  for (std::size_t c = 0; c < kSensorChannels; ++c) {
    j[std::string(to_string(static_cast<Channel>(c)))] = reading.values[c];
  }
  return j;
}

SensorReading reading_from_json(const json& j) {
  StrictObject o(j, "reading", kCode);
  SensorReading reading;
  reading.object = ObjectId(o.str("object"));
  reading.timestamp = o.integer("timestamp");
  reading.mechanical_event = o.boolean("mechanical_event");
  for (std::size_t c = 0; c < kSensorChannels; ++c) {
    reading.values[c] = o.number(std::string(to_string(static_cast<Channel>(c))));
  }
  o.finish();
  return reading;
}

json to_json(const SurveyResponse& response) {
  json answers = json::array();
  for (const auto& a : response.answers) {
    json entry{{"question", a.question_id}, {"rating", a.rating}};
    if (a.free_text) entry["text"] = *a.free_text;
    answers.push_back(std::move(entry));
  }
  return json{{"ticket", response.ticket.str()}, {"answers", std::move(answers)}};
}

SurveyResponse survey_from_json(const json& j) {
  StrictObject o(j, "survey", kCode);
  SurveyResponse response;
  response.ticket = TicketId(o.str("ticket"));
  const auto& answers = o.at("answers");
  if (!answers.is_array()) o.fail("survey.answers must be an array");
  for (const auto& a : answers) {
    StrictObject ao(a, "survey.answers[]", kCode);
    SurveyAnswer answer;
    answer.question_id = ao.str("question");
    answer.rating = static_cast<int>(ao.integer("rating"));
    if (const auto* text = ao.maybe("text")) answer.free_text = ao.as_string(*text, "text");
    ao.finish();
    response.answers.push_back(std::move(answer));
  }
  o.finish();
  return response;
}

json to_json(const Alarm& alarm) {
  json j{{"kind", to_string(alarm.kind)},
         {"subject", alarm.subject.str()},
         {"timestamp", alarm.timestamp}};
  std::visit([&j](const auto& d) {
    using T = std::decay_t<decltype(d)>;
    if constexpr (std::is_same_v<T, GateDetail>) {
      j["gate"] = d.gate.str();
    } else if constexpr (std::is_same_v<T, DisplacementDetail>) {
      j["displacement"] = d.meters;
    } else {
      j["channel"] = to_string(d.channel);
      j["value"] = d.value;
      j["violated"] = to_string(d.violated);
      j["bound"] = d.bound;
    }
  }, alarm.detail);
  return j;
}

Alarm alarm_from_json(const json& j) {
  StrictObject o(j, "alarm", kCode);
  Alarm alarm;
  const auto kind = o.str("kind");
  alarm.subject = ObjectId(o.str("subject"));
  alarm.timestamp = o.integer("timestamp");
  if (kind == "TheftAtGate") {
    alarm.kind = AlarmKind::TheftAtGate;
    alarm.detail = GateDetail{ReaderId(o.str("gate"))};
  } else if (kind == "LocationChange") {
    alarm.kind = AlarmKind::LocationChange;
    alarm.detail = DisplacementDetail{o.number("displacement")};
  } else if (kind == "Environmental") {
    alarm.kind = AlarmKind::Environmental;
    EnvironmentDetail d;
    auto channel = channel_from_string(o.str("channel"));
    if (!channel) o.fail("alarm.channel unknown");
    d.channel = *channel;
    d.value = o.number("value");
    const auto side = o.str("violated");
    if (side == "min") d.violated = BoundSide::Min;
    else if (side == "max") d.violated = BoundSide::Max;
    else if (side == "forbidden") d.violated = BoundSide::Forbidden;
    else o.fail("alarm.violated unknown");
    d.bound = o.number("bound");
    alarm.detail = d;
  } else {
    o.fail("unknown alarm kind '" + kind + "'");
  }
  o.finish();
  return alarm;
}

json to_json(const Event& event) {
  json payload = std::visit([](const auto& b) -> json {
    using T = std::decay_t<decltype(b)>;
    if constexpr (std::is_same_v<T, TicketIssued>) {
      return {{"ticket", b.ticket.str()}, {"tag", b.tag.str()}};
    } else if constexpr (std::is_same_v<T, PaymentReceived>) {
      return {{"ticket", b.ticket.str()}, {"amount", b.amount}};
    } else if constexpr (std::is_same_v<T, LanguageChosen>) {
      return {{"ticket", b.ticket.str()}, {"language", b.language}};
    } else if constexpr (std::is_same_v<T, GateEntry>) {
      return {{"ticket", b.ticket.str()}, {"gate", b.gate.str()}, {"language", b.language}};
    } else if constexpr (std::is_same_v<T, GateExit>) {
      return {{"ticket", b.ticket.str()}, {"gate", b.gate.str()}};
    } else if constexpr (std::is_same_v<T, TagSensedAtGate>) {
      return {{"tag", to_json(b.tag)}, {"gate", b.gate.str()}, {"object", b.object.str()}};
    } else if constexpr (std::is_same_v<T, ObjectInfoRead>) {
      return {{"ticket", b.ticket.str()}, {"object", b.object.str()}, {"node", b.node.str()},
              {"language", b.language}, {"fallback", b.fallback}};
    } else if constexpr (std::is_same_v<T, VisitEnded>) {
      return {{"ticket", b.ticket.str()}, {"object", b.object.str()}, {"dwell", b.dwell_seconds}};
    } else if constexpr (std::is_same_v<T, LocationFix>) {
      const bool is_object = std::holds_alternative<ObjectId>(b.subject);
      const std::string id = is_object ? std::get<ObjectId>(b.subject).str()
                                       : std::get<TicketId>(b.subject).str();
      return {{"subject", is_object ? "object" : "ticket"}, {"id", id},
              {"r", b.fix.r()}, {"theta", b.fix.theta()}, {"reader", b.reader.str()}};
    } else if constexpr (std::is_same_v<T, SensorTelemetry>) {
      return to_json(b.reading);
    } else if constexpr (std::is_same_v<T, SurveySubmitted>) {
      json j = to_json(b.response);
      j["visited"] = ids_json(b.visited);
      return j;
    } else if constexpr (std::is_same_v<T, AlarmRaised>) {
      return to_json(b.alarm);
    } else if constexpr (std::is_same_v<T, TicketReturned>) {
      return {{"ticket", b.ticket.str()}};
    } else {
      return {{"code", b.code}, {"detail", b.detail}};
    }
  }, event.body);
  return json{{"seq", event.seq},
              {"t", event.timestamp},
              {"kind", event_kind_name(event.body)},
              {"payload", std::move(payload)}};
}

Event event_from_json(const json& j) {
  StrictObject o(j, "event", kCode);
  Event event;
  const auto& seq = o.at("seq");
  if (!seq.is_number_unsigned() && !seq.is_number_integer()) o.fail("event.seq must be an integer");
  if (seq.is_number_integer() && seq.get<std::int64_t>() < 1) o.fail("event.seq must be >= 1");
  event.seq = seq.get<std::uint64_t>();
  event.timestamp = o.integer("t");
  if (event.timestamp < 0) o.fail("event.t must be non-negative");
  const auto kind = o.str("kind");
  const auto& pj = o.at("payload");
  o.finish();

  if (kind == "SensorTelemetry") {
    event.body = SensorTelemetry{reading_from_json(pj)};
    return event;
  }
  if (kind == "AlarmRaised") {
    event.body = AlarmRaised{alarm_from_json(pj)};
    return event;
  }

  StrictObject p(pj, "payload", kCode);
  if (kind == "TicketIssued") {
    event.body = TicketIssued{TicketId(p.str("ticket")), TagId(p.str("tag"))};
  } else if (kind == "PaymentReceived") {
    event.body = PaymentReceived{TicketId(p.str("ticket")), p.number("amount")};
  } else if (kind == "LanguageChosen") {
    event.body = LanguageChosen{TicketId(p.str("ticket")), p.str("language")};
  } else if (kind == "GateEntry") {
    event.body = GateEntry{TicketId(p.str("ticket")), ReaderId(p.str("gate")), p.str("language")};
  } else if (kind == "GateExit") {
    event.body = GateExit{TicketId(p.str("ticket")), ReaderId(p.str("gate"))};
  } else if (kind == "TagSensedAtGate") {
    event.body = TagSensedAtGate{tag_from_json(p.at("tag"), "payload.tag"), ReaderId(p.str("gate")),
                                 ObjectId(p.str("object"))};
  } else if (kind == "ObjectInfoRead") {
    event.body = ObjectInfoRead{TicketId(p.str("ticket")), ObjectId(p.str("object")),
                                NodeId(p.str("node")), p.str("language"), p.boolean("fallback")};
  } else if (kind == "VisitEnded") {
    event.body = VisitEnded{TicketId(p.str("ticket")), ObjectId(p.str("object")), p.integer("dwell")};
  } else if (kind == "LocationFix") {
    const auto subject = p.str("subject");
    const auto id = p.str("id");
    LocationFix fix;
    if (subject == "object") fix.subject = ObjectId(id);
    else if (subject == "ticket") fix.subject = TicketId(id);
    else p.fail("payload.subject must be 'object' or 'ticket'");
    try {
      fix.fix = PolarCoord::make(p.number("r"), p.number("theta"));
    } catch (const Error& e) {
      p.fail(std::string("payload polar: ") + e.what());
    }
    fix.reader = ReaderId(p.str("reader"));
    event.body = fix;
  } else if (kind == "SurveySubmitted") {
    SurveySubmitted s;
    s.visited = object_list(p.at("visited"), "payload.visited");
    json response = json::object();
    response["ticket"] = p.at("ticket");
    response["answers"] = p.at("answers");
    s.response = survey_from_json(response);
    event.body = std::move(s);
  } else if (kind == "TicketReturned") {
    event.body = TicketReturned{TicketId(p.str("ticket"))};
  } else if (kind == "Diagnostic") {
    event.body = Diagnostic{p.str("code"), p.str("detail")};
  } else {
    p.fail("unknown event kind '" + kind + "'");
  }
  p.finish();
  return event;
}

}  // namespace museum
