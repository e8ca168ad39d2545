#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "museum/core/message.hpp"
#include "museum/core/rng.hpp"
#include "museum/guidance/routing.hpp"
#include "museum/server/event_log.hpp"
#include "museum/server/server.hpp"
#include "museum/sim/scenario.hpp"

namespace museum::sim {

enum class Phase { Arriving, Paying, ChoosingLanguage, Touring, Surveying, Exiting, Gone };

std::string_view to_string(Phase phase);

/// Where an agent or a carried object is: on `node`, or `progress` seconds
/// along the walk towards `path[step + 1]`.
struct Walker {
  std::vector<std::size_t> path;
  std::size_t step = 0;
  std::int64_t progress = 0;

  bool walking() const noexcept { return step + 1 < path.size(); }
  std::size_t node() const { return path.at(step); }
};

struct VisitorAgent {
  SmartTicket ticket;
  Phase phase = Phase::Arriving;
  Tick arrival = 0;
  NodeId entry_gate;
  std::set<ObjectId> wishlist;  // objects still to visit
  guidance::RoutePlan plan;
  std::size_t next_stop = 0;
  Walker walker;
  std::optional<ObjectId> dwelling_at;
  Tick dwell_until = 0;
  Tick dwell_since = 0;
  bool language_sent = false;  // the gate opens on the tick after
  RngStream rng;
};

/// Read-only view of the current per-object crowd, as the smart tickets learn
/// it from the server.
using CrowdView = std::function<std::map<ObjectId, std::int64_t>()>;

/// Fixed-increment (1 s) world model: visitors, object circuits and readers.
/// step() produces every message of one tick in a fixed order: agents by
/// ticket id, then objects by object id, then readers by reader id.
class World {
 public:
  World(std::shared_ptr<const MuseumConfig> museum, ScenarioConfig scenario);

  void set_crowd_view(CrowdView view) { crowd_view_ = std::move(view); }

  /// `tick` must be exactly one past the previous call (the first call is 0).
  std::vector<Message> step(Tick tick);

  /// True once admissions are over and nobody (and nothing stolen) is still
  /// moving.
  bool finished(Tick tick) const;

  const std::map<TicketId, VisitorAgent>& agents() const noexcept { return agents_; }
  std::size_t scheduled_arrivals() const noexcept { return arrivals_.size(); }
  Position object_position(const ObjectId& id) const;
  Position agent_position(const VisitorAgent& agent) const;

 private:
  struct ObjectState {
    Position position;
    bool present = true;  // false once carried out through a gate
    bool battery_charged = true;
    std::optional<Walker> carried;
    std::optional<NodeId> theft_gate;
    RngStream rng;
  };

  void admit(Tick tick, std::vector<Message>& out);
  void advance_agent(VisitorAgent& agent, Tick tick, std::vector<Message>& out,
                     std::vector<TicketBeacon>& beacons);
  void advance_object(const ObjectId& id, ObjectState& object, Tick tick, std::vector<Message>& out,
                      std::vector<ObjectBeacon>& beacons);
  void emit_fixes(Tick tick, const std::vector<TicketBeacon>& tickets,
                  const std::vector<ObjectBeacon>& objects, std::vector<Message>& out);

  void plan_route(VisitorAgent& agent, Tick tick);
  void head_for_exit(VisitorAgent& agent);
  void arrive_at_stop(VisitorAgent& agent, Tick tick, std::vector<Message>& out);
  Position walker_position(const Walker& walker) const;
  bool advance_walker(Walker& walker) const;

  std::shared_ptr<const MuseumConfig> museum_;
  ScenarioConfig scenario_;
  guidance::PathTable paths_;
  RngFactory rng_;
  CrowdView crowd_view_;

  std::vector<Tick> arrivals_;  // sorted
  std::size_t next_arrival_ = 0;
  std::uint64_t ticket_counter_ = 0;
  std::map<TicketId, VisitorAgent> agents_;
  std::map<ObjectId, ObjectState> objects_;
  std::map<std::string, RngStream> fix_rng_;  // localization noise per subject
  std::optional<Tick> last_tick_;
};

/// Runs world and server together.
class Simulation {
 public:
  using TickObserver = std::function<void(Tick, const server::Server&, std::span<const Message>)>;

  explicit Simulation(const MuseumFile& file);

  void set_observer(TickObserver observer) { observer_ = std::move(observer); }

  /// Runs to completion: past the configured duration until every visitor has
  /// left. Returns the server's log.
  const EventLog& run();

  const server::Server& server() const noexcept { return *server_; }
  const World& world() const noexcept { return *world_; }

 private:
  std::shared_ptr<const MuseumConfig> museum_;
  ScenarioConfig scenario_;
  std::unique_ptr<server::Server> server_;
  std::unique_ptr<World> world_;
  TickObserver observer_;
};

/// Validates, simulates and returns the complete event log.
/// Throws ConfigError before the first tick on an invalid configuration.
EventLog run_scenario(const MuseumFile& file);

/// Hard stop for draining after closing time.
inline constexpr Tick kMaxDrainSeconds = 86400;

}  // namespace museum::sim
