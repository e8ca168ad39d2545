#include "museum/server/event_log.hpp"

#include <istream>
#include <mutex>
#include <ostream>
#include <string>

#include "museum/core/error.hpp"
#include "museum/core/json_codec.hpp"

namespace museum {

EventLog::EventLog(const EventLog& other) : events_(other.snapshot()) {}

EventLog& EventLog::operator=(const EventLog& other) {
  if (this != &other) {
    auto copy = other.snapshot();
    std::unique_lock lock(mutex_);
    events_ = std::move(copy);
  }
  return *this;
}

const Event& EventLog::append(Tick timestamp, EventBody body) {
  std::unique_lock lock(mutex_);
  if (timestamp < 0) throw Error(ErrorCode::DomainError, "negative event timestamp");
  if (!events_.empty() && timestamp < events_.back().timestamp) {
    throw Error(ErrorCode::DomainError, "event timestamp " + std::to_string(timestamp) +
                                           " precedes the log tail");
  }
  events_.push_back(Event{events_.size() + 1, timestamp, std::move(body)});
  return events_.back();
}

std::vector<Event> EventLog::snapshot() const {
  std::shared_lock lock(mutex_);
  return events_;
}

void EventLog::write_ndjson(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  for (const auto& event : events_) out << to_json(event).dump() << '\n';
}

EventLog EventLog::read_ndjson(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Event event;
    try {
      event = event_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (event.seq != log.events_.size() + 1) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": expected seq " +
                                            std::to_string(log.events_.size() + 1));
    }
    if (!log.events_.empty() && event.timestamp < log.events_.back().timestamp) {
      throw Error(ErrorCode::LogFormat, "line " + std::to_string(line_no) + ": timestamp goes backwards");
    }
    log.events_.push_back(std::move(event));
  }
  return log;
}

}  // namespace museum
