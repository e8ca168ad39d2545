#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "museum/config.hpp"
#include "museum/core/error.hpp"
#include "museum/core/event.hpp"
#include "museum/core/message.hpp"
#include "museum/core/rng.hpp"
#include "museum/server/event_log.hpp"
#include "museum/sim/scenario.hpp"

namespace museum::test {

/// Code of the museum::Error thrown by `fn`; records a failure if nothing is thrown.
ErrorCode code_of(const std::function<void()>& fn);

EnvThresholds default_thresholds();

ExhibitObject make_object(const std::string& id, std::vector<std::string> languages = {"en", "fa"});

struct GridSpec {
  int exhibits = 10;
  int columns = 5;
  int visitors = 50;           // explicit arrivals spread over the admission window
  Tick duration = 4 * 3600;
  std::uint64_t seed = 1;
  double spacing = 5.0;        // metres between neighbouring exhibits
};

/// Exhibits on a rows x columns grid, an entry gate west of the first column
/// and an exit gate east of the last one. The central reader sits in the
/// middle and covers the whole floor.
sim::MuseumFile grid_museum(const GridSpec& spec);

/// Random connected map with `nodes` nodes: node 0 is the entry gate, node 1
/// the exit gate, the rest exhibits o0, o1, ... Walk times are integers in
/// [1, 20]; extra edges are added with probability `density`.
MuseumMap random_map(RngStream& rng, int nodes, double density = 0.4);

/// A well-formed payload for message `kind` (1..12).
MessagePayload sample_payload(int kind);

/// Appends events with explicit timestamps; keeps seq numbering gapless.
class LogBuilder {
 public:
  LogBuilder& add(Tick t, EventBody body) {
    log_.append(t, std::move(body));
    return *this;
  }
  /// Issue, pay, choose language and enter in one go.
  LogBuilder& visitor_enters(Tick t, const std::string& ticket, const std::string& language = "en",
                             double price = 10.0, const std::string& gate = "in");
  LogBuilder& visitor_reads(Tick t, const std::string& ticket, const std::string& object, const std::string& node);
  LogBuilder& visitor_leaves_object(Tick t, const std::string& ticket, const std::string& object, Tick dwell);
  LogBuilder& visitor_exits(Tick t, const std::string& ticket, const std::string& gate = "out");

  const EventLog& log() const { return log_; }

 private:
  EventLog log_;
};

}  // namespace museum::test
