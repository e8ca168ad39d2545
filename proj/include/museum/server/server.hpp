#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "museum/config.hpp"
#include "museum/core/error.hpp"
#include "museum/core/event.hpp"
#include "museum/core/message.hpp"
#include "museum/radio/radio.hpp"
#include "museum/server/event_log.hpp"

namespace museum::server {

struct Dwell {
  ObjectId object;
  Tick since = 0;
  friend bool operator==(const Dwell&, const Dwell&) = default;
};

/// Server-side view of the museum, always equal to a fold of apply_event over
/// the log.
struct LiveState {
  std::set<TicketId> inside;
  std::map<ObjectId, std::int64_t> per_object_crowd;
  std::map<ObjectId, PolarCoord> last_fix;
  std::map<TicketId, PolarCoord> ticket_fix;
  std::map<ObjectId, SensorReading> last_reading;
  std::vector<Alarm> alarms;
  Tick watermark = 0;

  std::map<TicketId, SmartTicket> tickets;
  std::map<TagId, TicketId> ticket_tags;
  std::map<TicketId, Dwell> dwelling;
  std::int64_t entries = 0;
  std::int64_t exits = 0;

  friend bool operator==(const LiveState&, const LiveState&) = default;
};

/// The single state transition. Deterministic and config-free so a log file
/// alone is enough to rebuild state.
void apply_event(LiveState& state, const Event& event);

LiveState rebuild_state(std::span<const Event> events);

std::int64_t occupancy(const LiveState& state);
std::map<ObjectId, std::int64_t> crowd_snapshot(const LiveState& state);

/// TheftAtGate for object tags; ticket tags pass silently. The tag owner is
/// looked up in `config`.
std::optional<Alarm> detect_theft_at_gate(const HybridTag& sensed_tag, const radio::ReaderModel& gate,
                                          const MuseumConfig& config, Tick now);

/// LocationChange iff the fix lies strictly more than `epsilon` metres from
/// the object's registered home.
std::optional<Alarm> detect_location_change(const ExhibitObject& object, const PolarCoord& fix,
                                            double epsilon, Tick now);

/// One Environmental alarm per violated channel, plus one for a forbidden
/// mechanical event. Channel order is stable.
std::vector<Alarm> check_environment(const SensorReading& reading, const EnvThresholds& thresholds);

struct IngestResult {
  std::vector<Event> events;
  std::vector<Alarm> alarms;
  // Set when the message was refused; the log then holds one Diagnostic.
  std::optional<ErrorCode> rejection;
};

/// The wireless server: turns messages into events, keeps LiveState current
/// and raises alarms. Single writer.
class Server {
 public:
  explicit Server(std::shared_ptr<const MuseumConfig> config);

  IngestResult ingest(const Message& message);

  /// Records a harness-side anomaly as a Diagnostic at the current watermark.
  void note_diagnostic(std::string code, std::string detail);

  const LiveState& state() const noexcept { return state_; }
  const EventLog& log() const noexcept { return log_; }
  const MuseumConfig& config() const noexcept { return *config_; }

  std::int64_t occupancy() const { return server::occupancy(state_); }
  std::map<ObjectId, std::int64_t> crowd_snapshot() const { return server::crowd_snapshot(state_); }

 private:
  struct Pending;

  void handle_ticket_report(Pending& out, const TicketReport& report);
  void handle_location(Pending& out, const LocationReport& report);
  void handle_gate(Pending& out, int kind, const GateReport& report);
  void handle_telemetry(Pending& out, const SensorReading& reading);

  IngestResult reject(ErrorCode code, std::string detail);
  IngestResult commit(Tick timestamp, Pending& pending);

  std::shared_ptr<const MuseumConfig> config_;
  LiveState state_;
  EventLog log_;
};

}  // namespace museum::server
