#include "museum/sim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "museum/core/error.hpp"
#include "museum/guidance/guidance.hpp"
#include "museum/radio/radio.hpp"

namespace museum::sim {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Arriving: return "arriving";
    case Phase::Paying: return "paying";
    case Phase::ChoosingLanguage: return "choosing_language";
    case Phase::Touring: return "touring";
    case Phase::Surveying: return "surveying";
    case Phase::Exiting: return "exiting";
    case Phase::Gone: return "gone";
  }
  return "unknown";
}

namespace {

TicketId ticket_name(std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%05llu", static_cast<unsigned long long>(n));
  return TicketId(buf);
}

bool inside(Phase phase) {
  return phase == Phase::Touring || phase == Phase::Surveying || phase == Phase::Exiting;
}

}  // namespace

World::World(std::shared_ptr<const MuseumConfig> museum, ScenarioConfig scenario)
    : museum_(std::move(museum)), scenario_(std::move(scenario)), paths_(museum_->map), rng_(scenario_.seed) {
  if (!scenario_.arrival_times.empty()) {
    arrivals_ = scenario_.arrival_times;
    std::sort(arrivals_.begin(), arrivals_.end());
  } else if (scenario_.arrivals_per_hour > 0.0) {
    auto stream = rng_.stream("arrivals");
    const double rate = scenario_.arrivals_per_hour / 3600.0;
    const Tick last = scenario_.duration - scenario_.admission_cutoff;
    double t = stream.exponential(rate);
    while (t < static_cast<double>(last)) {
      arrivals_.push_back(static_cast<Tick>(std::floor(t)));
      t += stream.exponential(rate);
    }
  }
  for (const auto& [id, object] : museum_->objects) {
    ObjectState state{Position{}, true, object.tag.battery_charged, std::nullopt, std::nullopt,
                      rng_.stream("sensor/" + id.str())};
    if (auto node = museum_->map.node_of_object(id)) state.position = museum_->map.node(*node).position;
    objects_.emplace(id, std::move(state));
  }
}

Position World::object_position(const ObjectId& id) const { return objects_.at(id).position; }

Position World::agent_position(const VisitorAgent& agent) const { return walker_position(agent.walker); }

Position World::walker_position(const Walker& walker) const {
  const auto& here = museum_->map.node(walker.node()).position;
  if (!walker.walking()) return here;
  const auto& there = museum_->map.node(walker.path[walker.step + 1]).position;
  const double span = static_cast<double>(paths_.walk_time(walker.node(), walker.path[walker.step + 1]));
  const double f = static_cast<double>(walker.progress) / span;
  return Position{here.x + f * (there.x - here.x), here.y + f * (there.y - here.y)};
}

bool World::advance_walker(Walker& walker) const {
  if (!walker.walking()) return true;
  ++walker.progress;
  if (walker.progress >= paths_.walk_time(walker.node(), walker.path[walker.step + 1])) {
    ++walker.step;
    walker.progress = 0;
  }
  return !walker.walking();
}

bool World::finished(Tick tick) const {
  if (tick < scenario_.duration || next_arrival_ < arrivals_.size()) return false;
  for (const auto& [id, agent] : agents_) {
    if (agent.phase != Phase::Gone) return false;
  }
  for (const auto& [id, object] : objects_) {
    if (object.carried) return false;
  }
  for (const auto& theft : scenario_.thefts) {
    if (theft.time > tick) return false;
  }
  return true;
}

void World::admit(Tick tick, std::vector<Message>&) {
  while (next_arrival_ < arrivals_.size() && arrivals_[next_arrival_] <= tick) {
    ++next_arrival_;
    const auto id = ticket_name(++ticket_counter_);
    VisitorAgent agent{SmartTicket{id, HybridTag{TagId("tag-" + id.str()), true, TagKind::Ticket}, "", false, {}, {}},
                       Phase::Arriving,
                       tick,
                       NodeId(),
                       {},
                       {},
                       0,
                       Walker{},
                       std::nullopt,
                       0,
                       0,
                       false,
                       rng_.stream("ticket/" + id.str())};

    const auto gates = museum_->map.nodes_of_kind(NodeKind::EntryGate);
    const auto gate = gates[static_cast<std::size_t>(agent.rng.uniform_int(0, static_cast<std::int64_t>(gates.size()) - 1))];
    agent.entry_gate = museum_->map.node(gate).id;
    agent.walker = Walker{{gate}, 0, 0};

    if (scenario_.language_mix.empty()) {
      const auto& langs = museum_->languages;
      agent.ticket.language =
          langs[static_cast<std::size_t>(agent.rng.uniform_int(0, static_cast<std::int64_t>(langs.size()) - 1))];
    } else {
      std::vector<std::string> names;
      std::vector<double> weights;
      for (const auto& [language, w] : scenario_.language_mix) {
        names.push_back(language);
        weights.push_back(w);
      }
      agent.ticket.language = names[agent.rng.weighted_index(weights)];
    }

    auto pool = museum_->map.object_ids();
    const auto available = static_cast<std::int64_t>(pool.size());
    const auto lo = std::min<std::int64_t>(scenario_.min_objects_per_visitor, available);
    const auto hi = std::min<std::int64_t>(scenario_.max_objects_per_visitor, available);
    const auto want = agent.rng.uniform_int(lo, hi);
    for (std::int64_t i = 0; i < want; ++i) {
      const auto j = agent.rng.uniform_int(i, available - 1);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
      agent.wishlist.insert(pool[static_cast<std::size_t>(i)]);
    }
    agents_.emplace(id, std::move(agent));
  }
}

void World::plan_route(VisitorAgent& agent, Tick tick) {
  const auto& here = museum_->map.node(agent.walker.node()).id;
  // Drop wishes that can no longer be seen before closing, farthest-last first.
  while (!agent.wishlist.empty()) {
    const double needed = guidance::estimate_remaining_time(agent.ticket, agent.wishlist, paths_, here,
                                                            scenario_.default_dwell);
    if (static_cast<double>(tick) + needed <= static_cast<double>(scenario_.duration)) break;
    agent.wishlist.erase(std::prev(agent.wishlist.end()));
  }
  agent.plan = {};
  agent.next_stop = 0;
  if (agent.wishlist.empty()) return;

  guidance::RouteRequest request;
  request.current_node = here;
  request.unvisited = agent.wishlist;
  request.mode = scenario_.routing_mode;
  request.alpha = scenario_.routing_alpha;
  if (request.mode == guidance::RouteMode::CrowdBalanced && crowd_view_) request.crowd = crowd_view_();
  try {
    agent.plan = guidance::recommend_route(paths_, request);
  } catch (const Error&) {
    agent.wishlist.clear();
    return;
  }
  const auto target = museum_->map.node_of_object(agent.plan.stops.front());
  agent.walker = Walker{paths_.path(agent.walker.node(), *target), 0, 0};
}

void World::head_for_exit(VisitorAgent& agent) {
  const auto from = agent.walker.node();
  std::optional<std::size_t> best;
  for (auto gate : museum_->map.nodes_of_kind(NodeKind::ExitGate)) {
    const auto t = paths_.walk_time(from, gate);
    if (t == guidance::PathTable::kUnreachable) continue;
    if (!best || t < paths_.walk_time(from, *best) ||
        (t == paths_.walk_time(from, *best) && museum_->map.node(gate).id < museum_->map.node(*best).id)) {
      best = gate;
    }
  }
  agent.phase = Phase::Exiting;
  agent.walker = Walker{best ? paths_.path(from, *best) : std::vector<std::size_t>{from}, 0, 0};
}

void World::arrive_at_stop(VisitorAgent& agent, Tick tick, std::vector<Message>& out) {
  const auto object_id = agent.plan.stops.front();
  const auto& object = museum_->objects.at(object_id);
  const auto& state = objects_.at(object_id);
  const auto stand = museum_->map.node(agent.walker.node()).position;
  const double reach = distance(stand, state.position) + scenario_.viewing_distance;
  if (!state.present || state.carried || !radio::can_read(museum_->ticket_reader, object.tag, reach)) {
    agent.wishlist.erase(object_id);
    plan_route(agent, tick);
    return;
  }
  const auto info = guidance::lookup_object_info(object, agent.ticket.language, museum_->default_language);
  out.emplace_back(10, tick, TagRead{agent.ticket.id, object_id, object.tag.id});
  out.emplace_back(1, tick, TicketReport{ObjectVisitNote{agent.ticket.id, object_id, info.language, info.fallback}});
  const double drawn = agent.rng.lognormal(scenario_.dwell_mu, scenario_.dwell_sigma);
  agent.dwelling_at = object_id;
  agent.dwell_since = tick;
  agent.dwell_until = tick + std::max<Tick>(1, static_cast<Tick>(std::llround(drawn)));
}

void World::advance_agent(VisitorAgent& agent, Tick tick, std::vector<Message>& out,
                          std::vector<TicketBeacon>& beacons) {
  const auto& id = agent.ticket.id;
  switch (agent.phase) {
    case Phase::Arriving:
      out.emplace_back(1, tick, TicketReport{TicketIssuedNote{id, agent.ticket.tag.id}});
      agent.phase = Phase::Paying;
      return;
    case Phase::Paying:
      out.emplace_back(1, tick, TicketReport{PaymentNote{id, museum_->ticket_price}});
      agent.ticket.paid = true;
      agent.phase = Phase::ChoosingLanguage;
      return;
    case Phase::ChoosingLanguage: {
      if (!agent.language_sent) {
        out.emplace_back(1, tick, TicketReport{LanguageNote{id, agent.ticket.language}});
        agent.language_sent = true;
        return;
      }
      const ReaderId gate(agent.entry_gate.str());
      out.emplace_back(9, tick, GateSensing{gate, agent.ticket.tag});
      out.emplace_back(5, tick, GateReport{gate, agent.ticket.tag, agent.ticket.language});
      agent.phase = Phase::Touring;
      plan_route(agent, tick);
      if (agent.plan.stops.empty()) agent.phase = Phase::Surveying;
      break;
    }
    case Phase::Touring:
      if (agent.dwelling_at) {
        if (tick >= agent.dwell_until) {
          const auto object = *agent.dwelling_at;
          out.emplace_back(1, tick, TicketReport{VisitEndNote{id, object}});
          agent.ticket.visited.push_back(Visit{object, agent.dwell_since, tick - agent.dwell_since});
          agent.wishlist.erase(object);
          agent.dwelling_at.reset();
          plan_route(agent, tick);
          if (agent.plan.stops.empty()) agent.phase = Phase::Surveying;
        }
      } else if (advance_walker(agent.walker)) {
        arrive_at_stop(agent, tick, out);
        if (!agent.dwelling_at && agent.plan.stops.empty()) agent.phase = Phase::Surveying;
      }
      break;
    case Phase::Surveying: {
      if (agent.rng.bernoulli(scenario_.survey_probability) && !museum_->survey_questions.empty()) {
        SurveyResponse response{id, {}};
        for (const auto& q : museum_->survey_questions) {
          SurveyAnswer answer{q, static_cast<int>(agent.rng.uniform_int(1, 5)), std::nullopt};
          if (agent.rng.bernoulli(0.1)) answer.free_text = "comment on " + q;
          response.answers.push_back(std::move(answer));
        }
        std::vector<ObjectId> visited;
        for (const auto& v : agent.ticket.visited) visited.push_back(v.object);
        agent.ticket.survey = response;
        out.emplace_back(1, tick, TicketReport{SurveyNote{std::move(response), std::move(visited)}});
      }
      head_for_exit(agent);
      break;
    }
    case Phase::Exiting:
      if (advance_walker(agent.walker)) {
        const ReaderId gate(museum_->map.node(agent.walker.node()).id.str());
        out.emplace_back(11, tick, GateSensing{gate, agent.ticket.tag});
        out.emplace_back(7, tick, GateReport{gate, agent.ticket.tag, std::nullopt});
        agent.phase = Phase::Gone;
        return;
      }
      break;
    case Phase::Gone:
      return;
  }
  if (inside(agent.phase) && tick % scenario_.cr_fix_period == 0) {
    beacons.push_back(TicketBeacon{id, agent.ticket.tag.id, walker_position(agent.walker)});
  }
}

void World::advance_object(const ObjectId& id, ObjectState& object, Tick tick, std::vector<Message>& out,
                           std::vector<ObjectBeacon>& beacons) {
  if (!object.present) return;
  const auto& config = museum_->objects.at(id);

  for (const auto& theft : scenario_.thefts) {
    if (theft.object != id || theft.time != tick) continue;
    const auto from = museum_->map.node_of_object(id);
    const auto to = museum_->map.index_of(theft.gate);
    object.battery_charged = !theft.battery_depleted;
    object.theft_gate = theft.gate;
    object.carried = Walker{paths_.path(*from, to), 0, 0};
  }
  if (object.carried) {
    if (advance_walker(*object.carried)) {
      const auto& gate_node = museum_->map.node(object.carried->node());
      object.position = gate_node.position;
      const auto* reader = museum_->find_gate(ReaderId(gate_node.id.str()));
      const HybridTag tag{config.tag.id, object.battery_charged, TagKind::Object};
      if (reader && radio::can_read(*reader, tag, scenario_.gate_pass_distance)) {
        const bool entry = gate_node.kind == NodeKind::EntryGate;
        out.emplace_back(entry ? 6 : 8, tick, GateSensing{reader->id, tag});
        out.emplace_back(entry ? 5 : 7, tick, GateReport{reader->id, tag, std::nullopt});
      }
      object.carried.reset();
      object.present = false;
      return;
    }
    object.position = walker_position(*object.carried);
  }

  auto nominal = [&] {
    SensorReading reading{id, tick, {}, false};
    for (std::size_t c = 0; c < kSensorChannels; ++c) {
      const auto& b = config.thresholds.bounds[c];
      const double quarter = 0.25 * (b.max - b.min);
      reading.values[c] = object.rng.uniform(b.midpoint() - quarter, b.midpoint() + quarter);
    }
    return reading;
  };
  if (tick % scenario_.sensor_period == 0) out.emplace_back(12, tick, nominal());
  for (const auto& ex : scenario_.env_excursions) {
    if (ex.object != id || ex.time != tick) continue;
    auto reading = nominal();
    if (ex.channel == Channel::Mechanical) reading.mechanical_event = true;
    else reading.values[static_cast<std::size_t>(ex.channel)] = ex.value;
    out.emplace_back(12, tick, reading);
  }
  if (tick % scenario_.object_fix_period == 0) beacons.push_back(ObjectBeacon{id, config.tag.id, object.position});
}

void World::emit_fixes(Tick tick, const std::vector<TicketBeacon>& tickets,
                       const std::vector<ObjectBeacon>& objects, std::vector<Message>& out) {
  const auto& cr = museum_->central_reader;
  auto noise = [this, &cr](const std::string& subject) -> RngStream& {
    auto it = fix_rng_.find(subject);
    if (it == fix_rng_.end()) it = fix_rng_.emplace(subject, rng_.stream("cr/" + cr.id.str() + "/" + subject)).first;
    return it->second;
  };
  for (const auto& beacon : tickets) {
    const HybridTag tag{beacon.tag, true, TagKind::Ticket};
    if (!radio::can_read(cr, tag, distance(beacon.position, cr.position))) continue;
    out.emplace_back(3, tick, beacon);
    out.emplace_back(2, tick, LocationReport{beacon.ticket, radio::localize(cr, beacon.position, museum_->localization, noise("ticket/" + beacon.ticket.str())), cr.id});
  }
  for (const auto& beacon : objects) {
    const HybridTag tag{beacon.tag, objects_.at(beacon.object).battery_charged, TagKind::Object};
    if (!radio::can_read(cr, tag, distance(beacon.position, cr.position))) continue;
    out.emplace_back(4, tick, beacon);
    out.emplace_back(2, tick, LocationReport{beacon.object, radio::localize(cr, beacon.position, museum_->localization, noise("object/" + beacon.object.str())), cr.id});
  }
}

std::vector<Message> World::step(Tick tick) {
  if (last_tick_ ? tick != *last_tick_ + 1 : tick != 0) {
    throw Error(ErrorCode::DomainError, "world ticks must advance by exactly one");
  }
  last_tick_ = tick;
  std::vector<Message> out;
  std::vector<TicketBeacon> ticket_beacons;
  std::vector<ObjectBeacon> object_beacons;
  admit(tick, out);
  for (auto& [id, agent] : agents_) advance_agent(agent, tick, out, ticket_beacons);
  for (auto& [id, object] : objects_) advance_object(id, object, tick, out, object_beacons);
  emit_fixes(tick, ticket_beacons, object_beacons, out);
  return out;
}

// ---- Simulation -----------------------------------------------------------

Simulation::Simulation(const MuseumFile& file)
    : museum_(std::make_shared<const MuseumConfig>(file.museum)), scenario_(file.scenario) {
  file.validate();
  server_ = std::make_unique<server::Server>(museum_);
  world_ = std::make_unique<World>(museum_, scenario_);
  world_->set_crowd_view([this] { return server_->crowd_snapshot(); });
}

const EventLog& Simulation::run() {
  for (Tick tick = 0;; ++tick) {
    const auto messages = world_->step(tick);
    for (const auto& m : messages) {
      if (is_server_bound(m.kind())) server_->ingest(m);
    }
    if (observer_) observer_(tick, *server_, messages);
    if (world_->finished(tick)) break;
    if (tick >= scenario_.duration + kMaxDrainSeconds) {
      server_->note_diagnostic("DrainTimeout", "visitors still inside after the drain limit");
      break;
    }
  }
  return server_->log();
}

EventLog run_scenario(const MuseumFile& file) {
  Simulation sim(file);
  return sim.run();
}

}  // namespace museum::sim
