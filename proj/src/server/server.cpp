#include "museum/server/server.hpp"

#include <cmath>
#include <string>

#include "museum/guidance/guidance.hpp"

namespace museum::server {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

[[noreturn]] void refuse(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace

// ---- State transition -----------------------------------------------------

void apply_event(LiveState& s, const Event& event) {
  const Tick now = event.timestamp;
  std::visit(Overloaded{
      [&](const TicketIssued& e) {
        SmartTicket ticket;
        ticket.id = e.ticket;
        ticket.tag = HybridTag{e.tag, true, TagKind::Ticket};
        s.tickets[e.ticket] = std::move(ticket);
        s.ticket_tags[e.tag] = e.ticket;
      },
      [&](const PaymentReceived& e) { s.tickets[e.ticket].paid = true; },
      [&](const LanguageChosen& e) { s.tickets[e.ticket].language = e.language; },
      [&](const GateEntry& e) {
        s.inside.insert(e.ticket);
        s.tickets[e.ticket].language = e.language;
        ++s.entries;
      },
      [&](const GateExit& e) {
        s.inside.erase(e.ticket);
        if (auto it = s.dwelling.find(e.ticket); it != s.dwelling.end()) {
          --s.per_object_crowd[it->second.object];
          s.dwelling.erase(it);
        }
        s.ticket_fix.erase(e.ticket);
        ++s.exits;
      },
      [&](const TagSensedAtGate&) {},
      [&](const ObjectInfoRead& e) {
        ++s.per_object_crowd[e.object];
        s.dwelling[e.ticket] = Dwell{e.object, now};
        s.tickets[e.ticket].visited.push_back(Visit{e.object, now, 0});
      },
      [&](const VisitEnded& e) {
        --s.per_object_crowd[e.object];
        s.dwelling.erase(e.ticket);
        auto& visited = s.tickets[e.ticket].visited;
        if (!visited.empty()) visited.back().dwell_seconds = e.dwell_seconds;
      },
      [&](const LocationFix& e) {
        std::visit(Overloaded{
            [&](const ObjectId& id) { s.last_fix[id] = e.fix; },
            [&](const TicketId& id) { s.ticket_fix[id] = e.fix; },
        }, e.subject);
      },
      [&](const SensorTelemetry& e) { s.last_reading[e.reading.object] = e.reading; },
      [&](const SurveySubmitted& e) { s.tickets[e.response.ticket].survey = e.response; },
      [&](const AlarmRaised& e) { s.alarms.push_back(e.alarm); },
      [&](const TicketReturned&) {},
      [&](const Diagnostic&) {},
  }, event.body);
  if (now > s.watermark) s.watermark = now;
}

LiveState rebuild_state(std::span<const Event> events) {
  LiveState state;
  for (const auto& e : events) apply_event(state, e);
  return state;
}

std::int64_t occupancy(const LiveState& state) { return static_cast<std::int64_t>(state.inside.size()); }

std::map<ObjectId, std::int64_t> crowd_snapshot(const LiveState& state) { return state.per_object_crowd; }

// ---- Detectors ------------------------------------------------------------

std::optional<Alarm> detect_theft_at_gate(const HybridTag& sensed_tag, const radio::ReaderModel& gate,
                                          const MuseumConfig& config, Tick now) {
  if (sensed_tag.kind != TagKind::Object) return std::nullopt;
  const auto* object = config.object_by_tag(sensed_tag.id);
  if (!object) refuse(ErrorCode::UnknownSubject, "object tag " + sensed_tag.id.str() + " is not registered");
  return Alarm{AlarmKind::TheftAtGate, object->id, GateDetail{gate.id}, now};
}

std::optional<Alarm> detect_location_change(const ExhibitObject& object, const PolarCoord& fix,
                                            double epsilon, Tick now) {
  if (!(epsilon > 0.0)) refuse(ErrorCode::DomainError, "location epsilon must be positive");
  const Position origin{};
  const double moved = distance(radio::to_cartesian(fix, origin), radio::to_cartesian(object.home_polar, origin));
  if (!(moved > epsilon)) return std::nullopt;
  return Alarm{AlarmKind::LocationChange, object.id, DisplacementDetail{moved}, now};
}

std::vector<Alarm> check_environment(const SensorReading& reading, const EnvThresholds& thresholds) {
  std::vector<Alarm> alarms;
  for (std::size_t c = 0; c < kSensorChannels; ++c) {
    const auto channel = static_cast<Channel>(c);
    const double value = reading.values[c];
    const Bounds& b = thresholds.bounds[c];
    if (value < b.min) {
      alarms.push_back({AlarmKind::Environmental, reading.object,
                        EnvironmentDetail{channel, value, BoundSide::Min, b.min}, reading.timestamp});
    } else if (value > b.max) {
      alarms.push_back({AlarmKind::Environmental, reading.object,
                        EnvironmentDetail{channel, value, BoundSide::Max, b.max}, reading.timestamp});
    }
  }
  if (reading.mechanical_event && !thresholds.mechanical_events_allowed) {
    alarms.push_back({AlarmKind::Environmental, reading.object,
                      EnvironmentDetail{Channel::Mechanical, 1.0, BoundSide::Forbidden, 0.0},
                      reading.timestamp});
  }
  return alarms;
}

// ---- Server -------------------------------------------------------------

struct Server::Pending {
  Tick now = 0;
  std::vector<EventBody> bodies;
  std::vector<Alarm> alarms;
};

Server::Server(std::shared_ptr<const MuseumConfig> config) : config_(std::move(config)) {
  if (!config_) throw Error(ErrorCode::ConfigError, "server needs a configuration");
}

IngestResult Server::ingest(const Message& message) {
  if (message.timestamp() < state_.watermark) {
    return reject(ErrorCode::StaleMessage, "message " + std::to_string(message.kind()) + " at t=" +
                                               std::to_string(message.timestamp()) + " behind watermark");
  }
  if (!is_server_bound(message.kind())) {
    return reject(ErrorCode::NotServerBound,
                  "message " + std::to_string(message.kind()) + " does not terminate at the server");
  }
  Pending pending;
  pending.now = message.timestamp();
  try {
    switch (message.kind()) {
      case 1: handle_ticket_report(pending, message.as<TicketReport>()); break;
      case 2: handle_location(pending, message.as<LocationReport>()); break;
      case 5:
      case 7: handle_gate(pending, message.kind(), message.as<GateReport>()); break;
      case 12: handle_telemetry(pending, message.as<SensorReading>()); break;
      default: break;
    }
  } catch (const Error& e) {
    auto result = reject(e.code(), "t=" + std::to_string(message.timestamp()) + " message " +
                                       std::to_string(message.kind()) + ": " + e.what());
    return result;
  }
  return commit(message.timestamp(), pending);
}

void Server::note_diagnostic(std::string code, std::string detail) {
  apply_event(state_, log_.append(state_.watermark, Diagnostic{std::move(code), std::move(detail)}));
}

IngestResult Server::reject(ErrorCode code, std::string detail) {
  IngestResult result;
  result.rejection = code;
  const Event& e = log_.append(state_.watermark, Diagnostic{std::string(to_string(code)), std::move(detail)});
  apply_event(state_, e);
  result.events.push_back(e);
  return result;
}

IngestResult Server::commit(Tick timestamp, Pending& pending) {
  IngestResult result;
  for (auto& alarm : pending.alarms) pending.bodies.emplace_back(AlarmRaised{alarm});
  for (auto& body : pending.bodies) {
    const Event& e = log_.append(timestamp, std::move(body));
    apply_event(state_, e);
    result.events.push_back(e);
  }
  result.alarms = std::move(pending.alarms);
  return result;
}

void Server::handle_ticket_report(Pending& out, const TicketReport& report) {
  auto ticket_of = [this](const TicketId& id) -> const SmartTicket& {
    auto it = state_.tickets.find(id);
    if (it == state_.tickets.end()) refuse(ErrorCode::UnknownSubject, "unknown ticket " + id.str());
    return it->second;
  };
  auto require_inside = [this](const TicketId& id) {
    if (!state_.inside.contains(id)) refuse(ErrorCode::InvalidTransition, "ticket " + id.str() + " is not inside");
  };

  std::visit(Overloaded{
      [&](const TicketIssuedNote& n) {
        if (state_.tickets.contains(n.ticket)) refuse(ErrorCode::InvalidTransition, "ticket " + n.ticket.str() + " already issued");
        if (state_.ticket_tags.contains(n.tag) || config_->object_by_tag(n.tag)) {
          refuse(ErrorCode::InvalidTransition, "tag " + n.tag.str() + " already in use");
        }
        out.bodies.emplace_back(TicketIssued{n.ticket, n.tag});
      },
      [&](const PaymentNote& n) {
        const auto& ticket = ticket_of(n.ticket);
        if (ticket.paid) refuse(ErrorCode::InvalidTransition, "ticket " + n.ticket.str() + " already paid");
        if (!(n.amount >= 0.0) || !std::isfinite(n.amount)) refuse(ErrorCode::InvalidMessage, "bad payment amount");
        out.bodies.emplace_back(PaymentReceived{n.ticket, n.amount});
      },
      [&](const LanguageNote& n) {
        ticket_of(n.ticket);
        if (!config_->supports_language(n.language)) {
          refuse(ErrorCode::InvalidMessage, "language '" + n.language + "' is not offered");
        }
        out.bodies.emplace_back(LanguageChosen{n.ticket, n.language});
      },
      [&](const ObjectVisitNote& n) {
        ticket_of(n.ticket);
        require_inside(n.ticket);
        if (!config_->find_object(n.object)) refuse(ErrorCode::UnknownSubject, "unknown object " + n.object.str());
        if (state_.dwelling.contains(n.ticket)) {
          refuse(ErrorCode::InvalidTransition, "ticket " + n.ticket.str() + " is still at another object");
        }
        const auto node = config_->map.node_of_object(n.object);
        out.bodies.emplace_back(ObjectInfoRead{n.ticket, n.object, config_->map.node(*node).id, n.language,
                                               n.fallback});
      },
      [&](const VisitEndNote& n) {
        ticket_of(n.ticket);
        auto it = state_.dwelling.find(n.ticket);
        if (it == state_.dwelling.end() || it->second.object != n.object) {
          refuse(ErrorCode::InvalidTransition, "ticket " + n.ticket.str() + " is not at " + n.object.str());
        }
        out.bodies.emplace_back(VisitEnded{n.ticket, n.object, out.now - it->second.since});
      },
      [&](const SurveyNote& n) {
        const auto& ticket = ticket_of(n.response.ticket);
        require_inside(n.response.ticket);
        auto body = guidance::submit_survey(ticket, n.response);
        const bool mismatch = body.visited != n.visited;
        out.bodies.emplace_back(std::move(body));
        if (mismatch) {
          out.bodies.emplace_back(Diagnostic{"VisitedMismatch",
                                             "ticket " + n.response.ticket.str() +
                                                 " reported a visited list that differs from its reads"});
        }
      },
  }, report);
}

void Server::handle_location(Pending& out, const LocationReport& report) {
  if (report.reader != config_->central_reader.id) {
    refuse(ErrorCode::UnknownSubject, "location from unknown reader " + report.reader.str());
  }
  std::visit(Overloaded{
      [&](const ObjectId& id) {
        const auto* object = config_->find_object(id);
        if (!object) refuse(ErrorCode::UnknownSubject, "unknown object " + id.str());
        out.bodies.emplace_back(LocationFix{report.subject, report.fix, report.reader});
        if (auto alarm = detect_location_change(*object, report.fix, config_->location_epsilon, out.now)) {
          out.alarms.push_back(*alarm);
        }
      },
      [&](const TicketId& id) {
        if (!state_.inside.contains(id)) refuse(ErrorCode::UnknownSubject, "ticket " + id.str() + " is not inside");
        out.bodies.emplace_back(LocationFix{report.subject, report.fix, report.reader});
      },
  }, report.subject);
}

void Server::handle_gate(Pending& out, int kind, const GateReport& report) {
  const auto* gate = config_->find_gate(report.gate);
  if (!gate) refuse(ErrorCode::UnknownSubject, "unknown gate reader " + report.gate.str());
  const bool entry_gate = kind == 5;
  if (gate->role != (entry_gate ? radio::ReaderRole::GateIn : radio::ReaderRole::GateOut)) {
    refuse(ErrorCode::InvalidMessage, "gate " + report.gate.str() + " cannot send message " + std::to_string(kind));
  }

  if (report.tag.kind == TagKind::Object) {
    const auto* object = config_->object_by_tag(report.tag.id);
    if (!object) refuse(ErrorCode::UnknownSubject, "unregistered object tag " + report.tag.id.str());
    out.bodies.emplace_back(TagSensedAtGate{report.tag, report.gate, object->id});
    if (auto alarm = detect_theft_at_gate(report.tag, *gate, *config_, out.now)) out.alarms.push_back(*alarm);
    return;
  }

  auto owner = state_.ticket_tags.find(report.tag.id);
  if (owner == state_.ticket_tags.end()) refuse(ErrorCode::UnknownSubject, "unknown ticket tag " + report.tag.id.str());
  const TicketId& ticket_id = owner->second;
  const SmartTicket& ticket = state_.tickets.at(ticket_id);
  const bool inside = state_.inside.contains(ticket_id);

  if (entry_gate) {
    if (!ticket.paid) refuse(ErrorCode::GateRejected, "ticket " + ticket_id.str() + " has not paid");
    if (inside) refuse(ErrorCode::InvalidTransition, "ticket " + ticket_id.str() + " is already inside");
    std::string language = report.language.value_or(ticket.language);
    if (language.empty()) language = config_->default_language;
    out.bodies.emplace_back(GateEntry{ticket_id, report.gate, std::move(language)});
  } else {
    if (!inside) refuse(ErrorCode::InvalidTransition, "ticket " + ticket_id.str() + " is not inside");
    out.bodies.emplace_back(GateExit{ticket_id, report.gate});
    out.bodies.emplace_back(TicketReturned{ticket_id});
  }
}

void Server::handle_telemetry(Pending& out, const SensorReading& reading) {
  const auto* object = config_->find_object(reading.object);
  if (!object) refuse(ErrorCode::UnknownSubject, "unknown object " + reading.object.str());
  for (double v : reading.values) {
    if (!std::isfinite(v)) refuse(ErrorCode::InvalidMessage, "non-finite sensor value");
  }
  if (reading.timestamp < 0 || reading.timestamp > out.now) refuse(ErrorCode::InvalidMessage, "reading timestamp");
  out.bodies.emplace_back(SensorTelemetry{reading});
  for (auto& alarm : check_environment(reading, object->thresholds)) {
    alarm.timestamp = out.now;  // keeps the alarm list in log order
    out.alarms.push_back(std::move(alarm));
  }
}

}  // namespace museum::server
