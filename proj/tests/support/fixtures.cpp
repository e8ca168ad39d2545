#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "museum/radio/radio.hpp"

namespace museum::test {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::DomainError;
}

EnvThresholds default_thresholds() {
  EnvThresholds t;
  t[Channel::Temperature] = {18.0, 24.0};
  t[Channel::Pressure] = {95.0, 105.0};
  t[Channel::Humidity] = {40.0, 60.0};
  t[Channel::Light] = {0.0, 200.0};
  t[Channel::Ph] = {6.0, 8.0};
  t[Channel::Gas] = {0.0, 50.0};
  return t;
}

ExhibitObject make_object(const std::string& id, std::vector<std::string> languages) {
  ExhibitObject o;
  o.id = ObjectId(id);
  o.tag = HybridTag{TagId("tag-" + id), true, TagKind::Object};
  for (const auto& l : languages) o.info[l] = InfoRecord{id + " (" + l + ")"};
  o.thresholds = default_thresholds();
  return o;
}

namespace {

Tick walk_seconds(const Position& a, const Position& b) {
  return std::max<Tick>(1, static_cast<Tick>(std::ceil(distance(a, b) / 1.2)));
}

}  // namespace

sim::MuseumFile grid_museum(const GridSpec& spec) {
  sim::MuseumFile file;
  auto& m = file.museum;
  m.languages = {"en", "fa"};
  m.default_language = "en";
  m.ticket_price = 10.0;
  m.survey_questions = {"q1", "q2"};

  const int rows = (spec.exhibits + spec.columns - 1) / spec.columns;
  const double width = spec.spacing * (spec.columns - 1);
  const double height = spec.spacing * (rows - 1);
  const Position centre{width / 2.0, height / 2.0};

  std::vector<MapNode> nodes;
  std::vector<MapEdge> edges;
  const Position in_pos{-spec.spacing, height / 2.0};
  const Position out_pos{width + spec.spacing, height / 2.0};
  nodes.push_back({NodeId("in"), NodeKind::EntryGate, in_pos, std::nullopt});
  nodes.push_back({NodeId("out"), NodeKind::ExitGate, out_pos, std::nullopt});

  auto node_name = [](int i) { return "n" + std::to_string(i); };
  auto object_name = [](int i) {
    std::string s = std::to_string(i);
    return "o" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
  };
  std::vector<Position> pos;
  for (int i = 0; i < spec.exhibits; ++i) {
    const Position p{spec.spacing * (i % spec.columns), spec.spacing * (i / spec.columns)};
    pos.push_back(p);
    nodes.push_back({NodeId(node_name(i)), NodeKind::Exhibit, p, ObjectId(object_name(i))});
    m.objects.emplace(ObjectId(object_name(i)), make_object(object_name(i)));
  }
  for (int i = 0; i < spec.exhibits; ++i) {
    const int col = i % spec.columns;
    if (col + 1 < spec.columns && i + 1 < spec.exhibits) {
      edges.push_back({NodeId(node_name(i)), NodeId(node_name(i + 1)), walk_seconds(pos[i], pos[i + 1])});
    }
    if (i + spec.columns < spec.exhibits) {
      edges.push_back({NodeId(node_name(i)), NodeId(node_name(i + spec.columns)),
                       walk_seconds(pos[i], pos[i + spec.columns])});
    }
    if (col == 0) edges.push_back({NodeId("in"), NodeId(node_name(i)), walk_seconds(in_pos, pos[i])});
    if (col == spec.columns - 1 || i == spec.exhibits - 1) {
      edges.push_back({NodeId("out"), NodeId(node_name(i)), walk_seconds(out_pos, pos[i])});
    }
  }
  m.map = MuseumMap(nodes, edges);

  double reach = 0.0;
  for (const auto& n : nodes) reach = std::max(reach, distance(n.position, centre));
  m.central_reader = radio::ReaderModel{ReaderId("cr"), centre, 5.0, reach + 2.0, radio::ReaderRole::Central};
  m.gate_readers[ReaderId("in")] = radio::ReaderModel{ReaderId("in"), in_pos, 2.0, 10.0, radio::ReaderRole::GateIn};
  m.gate_readers[ReaderId("out")] = radio::ReaderModel{ReaderId("out"), out_pos, 2.0, 10.0, radio::ReaderRole::GateOut};
  m.ticket_reader = radio::ReaderModel{ReaderId("ticket"), {}, 1.0, 1.0, radio::ReaderRole::TicketReader};
  for (auto& [id, object] : m.objects) {
    object.home_polar = radio::to_polar(m.map.node(*m.map.node_of_object(id)).position, centre);
  }

  auto& s = file.scenario;
  s.duration = spec.duration;
  s.seed = spec.seed;
  RngStream arrivals(spec.seed, "fixture/arrivals");
  const Tick window = std::max<Tick>(1, spec.duration - s.admission_cutoff);
  for (int v = 0; v < spec.visitors; ++v) s.arrival_times.push_back(arrivals.uniform_int(0, window - 1));
  std::sort(s.arrival_times.begin(), s.arrival_times.end());
  return file;
}

MuseumMap random_map(RngStream& rng, int nodes, double density) {
  std::vector<MapNode> ns;
  for (int i = 0; i < nodes; ++i) {
    MapNode n;
    n.id = NodeId(i == 0 ? "gin" : i == 1 ? "gout" : "x" + std::to_string(i));
    n.kind = i == 0 ? NodeKind::EntryGate : i == 1 ? NodeKind::ExitGate : NodeKind::Exhibit;
    n.position = {rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
    if (n.kind == NodeKind::Exhibit) n.object = ObjectId("o" + std::to_string(i));
    ns.push_back(n);
  }
  std::vector<MapEdge> es;
  // Random spanning tree first, then extra edges.
  for (int i = 1; i < nodes; ++i) {
    const auto j = rng.uniform_int(0, i - 1);
    es.push_back({ns[static_cast<std::size_t>(i)].id, ns[static_cast<std::size_t>(j)].id, rng.uniform_int(1, 20)});
  }
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      if (rng.bernoulli(density)) {
        es.push_back({ns[static_cast<std::size_t>(i)].id, ns[static_cast<std::size_t>(j)].id, rng.uniform_int(1, 20)});
      }
    }
  }
  return MuseumMap(ns, es);
}

MessagePayload sample_payload(int kind) {
  const HybridTag object_tag{TagId("tag-o1"), true, TagKind::Object};
  const HybridTag ticket_tag{TagId("tag-t1"), true, TagKind::Ticket};
  switch (kind) {
    case 1: return TicketReport{PaymentNote{TicketId("t1"), 10.0}};
    case 2: return LocationReport{ObjectId("o1"), PolarCoord::make(3.0, 0.5), ReaderId("cr")};
    case 3: return TicketBeacon{TicketId("t1"), ticket_tag.id, Position{1.0, 2.0}};
    case 4: return ObjectBeacon{ObjectId("o1"), object_tag.id, Position{1.0, 2.0}};
    case 5: return GateReport{ReaderId("in"), ticket_tag, std::string("fa")};
    case 7: return GateReport{ReaderId("out"), ticket_tag, std::nullopt};
    case 6: return GateSensing{ReaderId("in"), object_tag};
    case 8: return GateSensing{ReaderId("out"), object_tag};
    case 9: return GateSensing{ReaderId("in"), ticket_tag};
    case 11: return GateSensing{ReaderId("out"), ticket_tag};
    case 10: return TagRead{TicketId("t1"), ObjectId("o1"), object_tag.id};
    default: {
      SensorReading r{ObjectId("o1"), 0, {}, false};
      return r;
    }
  }
}

LogBuilder& LogBuilder::visitor_enters(Tick t, const std::string& ticket, const std::string& language, double price,
                                       const std::string& gate) {
  const TicketId id(ticket);
  add(t, TicketIssued{id, TagId("tag-" + ticket)});
  add(t, PaymentReceived{id, price});
  add(t, LanguageChosen{id, language});
  return add(t, GateEntry{id, ReaderId(gate), language});
}

LogBuilder& LogBuilder::visitor_reads(Tick t, const std::string& ticket, const std::string& object,
                                      const std::string& node) {
  return add(t, ObjectInfoRead{TicketId(ticket), ObjectId(object), NodeId(node), "en", false});
}

LogBuilder& LogBuilder::visitor_leaves_object(Tick t, const std::string& ticket, const std::string& object,
                                              Tick dwell) {
  return add(t, VisitEnded{TicketId(ticket), ObjectId(object), dwell});
}

LogBuilder& LogBuilder::visitor_exits(Tick t, const std::string& ticket, const std::string& gate) {
  add(t, GateExit{TicketId(ticket), ReaderId(gate)});
  return add(t, TicketReturned{TicketId(ticket)});
}

}  // namespace museum::test
