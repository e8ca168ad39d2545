#pragma once

#include <cstdint>
#include <iosfwd>
#include <shared_mutex>
#include <span>
#include <vector>

#include "museum/core/event.hpp"

namespace museum {

/// Append-only, timestamp-ordered record of everything the server learned.
/// Sequence numbers start at 1 and are gapless. One writer at a time;
/// snapshot() may be called concurrently with append().
class EventLog {
 public:
  EventLog() = default;
  EventLog(const EventLog& other);
  EventLog& operator=(const EventLog& other);

  /// Throws DomainError if `timestamp` is older than the last event.
  const Event& append(Tick timestamp, EventBody body);

  /// Unsynchronized view for the single-threaded owner.
  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  Tick last_timestamp() const noexcept { return events_.empty() ? 0 : events_.back().timestamp; }

  std::vector<Event> snapshot() const;

  /// One JSON object per line.
  void write_ndjson(std::ostream& out) const;
  /// Parses and checks seq continuity and timestamp order; throws LogFormat.
  static EventLog read_ndjson(std::istream& in);

  friend bool operator==(const EventLog& a, const EventLog& b) { return a.events_ == b.events_; }

 private:
  std::vector<Event> events_;
  mutable std::shared_mutex mutex_;
};

}  // namespace museum
