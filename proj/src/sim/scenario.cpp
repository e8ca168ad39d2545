#include "museum/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "museum/core/error.hpp"
#include "museum/core/strict_json.hpp"
#include "museum/radio/radio.hpp"

namespace museum::sim {

using nlohmann::json;

namespace {

constexpr ErrorCode kCode = ErrorCode::ConfigError;

const json& array_at(StrictObject& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) obj.fail(obj.child(key) + " must be an array");
  return v;
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Bounds parse_bounds(StrictObject& obj, const std::string& key) {
  const auto& v = array_at(obj, key);
  if (v.size() != 2) obj.fail(obj.child(key) + " must be [min, max]");
  return Bounds{obj.as_number(v[0], obj.child(key)), obj.as_number(v[1], obj.child(key))};
}

EnvThresholds parse_thresholds(const json& j, const std::string& path) {
  StrictObject obj(j, path, kCode);
  EnvThresholds t;
  for (std::size_t c = 0; c < kSensorChannels; ++c) {
    t.bounds[c] = parse_bounds(obj, std::string(to_string(static_cast<Channel>(c))));
  }
  if (obj.has("mechanical_events_allowed")) t.mechanical_events_allowed = obj.boolean("mechanical_events_allowed");
  obj.finish();
  return t;
}

std::vector<std::string> parse_strings(StrictObject& obj, const std::string& key) {
  std::vector<std::string> out;
  const auto& v = array_at(obj, key);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(obj.as_string(v[i], indexed(obj.child(key), i)));
  return out;
}

MuseumMap parse_map(StrictObject& root) {
  std::vector<MapNode> nodes;
  const auto& jnodes = array_at(root, "nodes");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    StrictObject n(jnodes[i], indexed("nodes", i), kCode);
    MapNode node;
    node.id = NodeId(n.str("id"));
    const auto kind_name = n.str("kind");
    const auto kind = node_kind_from_string(kind_name);
    if (!kind) n.fail(n.child("kind") + " unknown node kind " + kind_name);
    node.kind = *kind;
    node.position = Position{n.number("x"), n.number("y")};
    if (n.has("object")) node.object = ObjectId(n.str("object"));
    n.finish();
    nodes.push_back(std::move(node));
  }
  std::vector<MapEdge> edges;
  const auto& jedges = array_at(root, "edges");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    StrictObject e(jedges[i], indexed("edges", i), kCode);
    edges.push_back(MapEdge{NodeId(e.str("a")), NodeId(e.str("b")), e.integer("walk_time")});
    e.finish();
  }
  return MuseumMap(std::move(nodes), std::move(edges));
}

void parse_objects(StrictObject& root, MuseumConfig& museum) {
  const auto& jobjects = array_at(root, "objects");
  for (std::size_t i = 0; i < jobjects.size(); ++i) {
    const auto path = indexed("objects", i);
    StrictObject o(jobjects[i], path, kCode);
    ExhibitObject object;
    object.id = ObjectId(o.str("id"));
    object.tag = HybridTag{TagId(o.str("tag")), true, TagKind::Object};
    const auto& info = o.at("info");
    if (!info.is_object()) o.fail(o.child("info") + " must be an object");
    for (const auto& [language, text] : info.items()) {
      object.info[language] = InfoRecord{o.as_string(text, o.child("info") + "." + language)};
    }
    object.thresholds = parse_thresholds(o.at("thresholds"), o.child("thresholds"));
    o.finish();
    if (!museum.objects.emplace(object.id, object).second) o.fail("duplicate object id " + object.id.str());
  }
}

void parse_readers(const json& j, MuseumConfig& museum) {
  StrictObject readers(j, "readers", kCode);

  StrictObject central(readers.at("central"), "readers.central", kCode);
  museum.central_reader.id = ReaderId(central.str("id"));
  museum.central_reader.position = Position{central.number("x"), central.number("y")};
  museum.central_reader.passive_range = central.number("passive_range");
  museum.central_reader.active_range = central.number("active_range");
  museum.central_reader.role = radio::ReaderRole::Central;
  central.finish();

  double gate_passive = kDefaultGatePassiveRange;
  double gate_active = kDefaultGateActiveRange;
  if (const auto* g = readers.maybe("gate")) {
    StrictObject gate(*g, "readers.gate", kCode);
    if (gate.has("passive_range")) gate_passive = gate.number("passive_range");
    if (gate.has("active_range")) gate_active = gate.number("active_range");
    gate.finish();
  }
  for (const auto& node : museum.map.nodes()) {
    if (node.kind == NodeKind::Exhibit) continue;
    radio::ReaderModel reader;
    reader.id = ReaderId(node.id.str());
    reader.position = node.position;
    reader.passive_range = gate_passive;
    reader.active_range = gate_active;
    reader.role = node.kind == NodeKind::EntryGate ? radio::ReaderRole::GateIn : radio::ReaderRole::GateOut;
    museum.gate_readers[reader.id] = reader;
  }

  double ticket_range = kDefaultTicketReaderRange;
  if (const auto* t = readers.maybe("ticket_reader")) {
    StrictObject ticket(*t, "readers.ticket_reader", kCode);
    ticket_range = ticket.number("range");
    ticket.finish();
  }
  museum.ticket_reader = radio::ReaderModel{ReaderId("ticket"), Position{}, ticket_range, ticket_range,
                                            radio::ReaderRole::TicketReader};
  readers.finish();
}

std::vector<Tick> parse_times(StrictObject& obj, const std::string& key) {
  std::vector<Tick> out;
  const auto& v = array_at(obj, key);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(obj.as_integer(v[i], indexed(obj.child(key), i)));
  return out;
}

Channel parse_channel(StrictObject& obj, const std::string& key) {
  const auto name = obj.str(key);
  const auto channel = channel_from_string(name);
  if (!channel) obj.fail(obj.child(key) + " unknown channel " + name);
  return *channel;
}

ScenarioConfig parse_scenario(const json& j) {
  StrictObject s(j, "simulation", kCode);
  ScenarioConfig c;
  if (s.has("duration")) c.duration = s.integer("duration");
  if (s.has("seed")) {
    const auto& v = s.at("seed");
    if (!v.is_number_unsigned()) s.fail("simulation.seed must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  {
    StrictObject a(s.at("arrivals"), "simulation.arrivals", kCode);
    const bool rate = a.has("rate_per_hour");
    if (rate == a.has("times")) a.fail("simulation.arrivals needs exactly one of rate_per_hour, times");
    if (rate) c.arrivals_per_hour = a.number("rate_per_hour");
    else c.arrival_times = parse_times(a, "times");
    a.finish();
  }
  if (s.has("admission_cutoff")) c.admission_cutoff = s.integer("admission_cutoff");
  if (const auto* d = s.maybe("dwell")) {
    StrictObject dwell(*d, "simulation.dwell", kCode);
    c.dwell_mu = dwell.number("mu");
    c.dwell_sigma = dwell.number("sigma");
    dwell.finish();
  }
  if (s.has("default_dwell")) c.default_dwell = s.number("default_dwell");
  if (const auto* mix = s.maybe("language_mix")) {
    if (!mix->is_object()) s.fail("simulation.language_mix must be an object");
    for (const auto& [language, weight] : mix->items()) {
      c.language_mix[language] = s.as_number(weight, "simulation.language_mix." + language);
    }
  }
  if (const auto* range = s.maybe("objects_per_visitor")) {
    if (!range->is_array() || range->size() != 2) s.fail("simulation.objects_per_visitor must be [min, max]");
    c.min_objects_per_visitor = static_cast<int>(s.as_integer((*range)[0], "simulation.objects_per_visitor"));
    c.max_objects_per_visitor = static_cast<int>(s.as_integer((*range)[1], "simulation.objects_per_visitor"));
  }
  if (s.has("survey_probability")) c.survey_probability = s.number("survey_probability");
  if (s.has("cr_fix_period")) c.cr_fix_period = s.integer("cr_fix_period");
  if (s.has("object_fix_period")) c.object_fix_period = s.integer("object_fix_period");
  if (s.has("sensor_period")) c.sensor_period = s.integer("sensor_period");
  if (s.has("max_walking_speed")) c.max_walking_speed = s.number("max_walking_speed");
  if (s.has("gate_pass_distance")) c.gate_pass_distance = s.number("gate_pass_distance");
  if (s.has("viewing_distance")) c.viewing_distance = s.number("viewing_distance");
  if (const auto* r = s.maybe("routing")) {
    StrictObject routing(*r, "simulation.routing", kCode);
    if (routing.has("mode")) {
      const auto mode = routing.str("mode");
      if (mode == "shortest") c.routing_mode = guidance::RouteMode::Shortest;
      else if (mode == "crowd_balanced") c.routing_mode = guidance::RouteMode::CrowdBalanced;
      else routing.fail("simulation.routing.mode must be shortest or crowd_balanced");
    }
    if (routing.has("alpha")) c.routing_alpha = routing.number("alpha");
    routing.finish();
  }
  if (const auto* t = s.maybe("thefts")) {
    if (!t->is_array()) s.fail("simulation.thefts must be an array");
    for (std::size_t i = 0; i < t->size(); ++i) {
      StrictObject theft((*t)[i], indexed("simulation.thefts", i), kCode);
      TheftScript script;
      script.object = ObjectId(theft.str("object"));
      script.time = theft.integer("time");
      script.gate = NodeId(theft.str("gate"));
      if (theft.has("battery_depleted")) script.battery_depleted = theft.boolean("battery_depleted");
      theft.finish();
      c.thefts.push_back(std::move(script));
    }
  }
  if (const auto* x = s.maybe("env_excursions")) {
    if (!x->is_array()) s.fail("simulation.env_excursions must be an array");
    for (std::size_t i = 0; i < x->size(); ++i) {
      StrictObject ex((*x)[i], indexed("simulation.env_excursions", i), kCode);
      EnvExcursion e;
      e.object = ObjectId(ex.str("object"));
      e.channel = parse_channel(ex, "channel");
      if (e.channel != Channel::Mechanical) e.value = ex.number("value");
      e.time = ex.integer("time");
      ex.finish();
      c.env_excursions.push_back(e);
    }
  }
  s.finish();
  return c;
}

void check_scenario(const MuseumConfig& museum, const ScenarioConfig& c, std::vector<std::string>& problems) {
  auto need = [&problems](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  need(c.duration > 0, "duration must be > 0");
  need(c.cr_fix_period > 0, "cr_fix_period must be > 0");
  need(c.object_fix_period > 0, "object_fix_period must be > 0");
  need(c.sensor_period > 0, "sensor_period must be > 0");
  need(c.admission_cutoff >= 0, "admission_cutoff must be >= 0");
  need(std::isfinite(c.arrivals_per_hour) && c.arrivals_per_hour >= 0.0, "arrival rate must be >= 0");
  for (auto t : c.arrival_times) need(t >= 0 && t < c.duration, "arrival time outside [0, duration)");
  need(std::isfinite(c.dwell_mu), "dwell mu must be finite");
  need(std::isfinite(c.dwell_sigma) && c.dwell_sigma >= 0.0, "dwell sigma must be >= 0");
  need(c.default_dwell > 0.0, "default_dwell must be > 0");
  double mix_total = 0.0;
  for (const auto& [language, weight] : c.language_mix) {
    need(museum.supports_language(language), "language_mix names unknown language " + language);
    need(weight >= 0.0, "language_mix weight must be >= 0");
    mix_total += weight;
  }
  need(c.language_mix.empty() || mix_total > 0.0, "language_mix weights sum to 0");
  need(c.min_objects_per_visitor >= 0 && c.min_objects_per_visitor <= c.max_objects_per_visitor,
       "objects_per_visitor must satisfy 0 <= min <= max");
  need(c.survey_probability >= 0.0 && c.survey_probability <= 1.0, "survey_probability outside [0, 1]");
  need(c.max_walking_speed > 0.0, "max_walking_speed must be > 0");
  need(c.gate_pass_distance >= 0.0, "gate_pass_distance must be >= 0");
  need(c.viewing_distance >= 0.0, "viewing_distance must be >= 0");
  need(c.routing_alpha >= 0.0, "routing alpha must be >= 0");

  for (const auto& edge : museum.map.edges()) {
    const auto a = museum.map.find(edge.a);
    const auto b = museum.map.find(edge.b);
    if (!a || !b || edge.walk_time <= 0) continue;
    const double length = distance(museum.map.node(*a).position, museum.map.node(*b).position);
    need(length <= c.max_walking_speed * static_cast<double>(edge.walk_time) + 1e-9,
         "edge " + edge.a.str() + "-" + edge.b.str() + " is faster than max_walking_speed");
  }

  std::set<ObjectId> stolen;
  for (const auto& theft : c.thefts) {
    need(museum.find_object(theft.object) != nullptr, "theft of unknown object " + theft.object.str());
    need(stolen.insert(theft.object).second, "object " + theft.object.str() + " stolen twice");
    need(theft.time >= 0 && theft.time < c.duration, "theft time outside [0, duration)");
    const auto node = museum.map.find(theft.gate);
    need(node && museum.map.node(*node).kind != NodeKind::Exhibit, "theft gate " + theft.gate.str() + " is not a gate");
  }
  for (const auto& ex : c.env_excursions) {
    const auto* object = museum.find_object(ex.object);
    need(object != nullptr, "excursion on unknown object " + ex.object.str());
    need(ex.time >= 0 && ex.time < c.duration, "excursion time outside [0, duration)");
    if (!object) continue;
    if (ex.channel == Channel::Mechanical) {
      need(!object->thresholds.mechanical_events_allowed,
           "mechanical excursion on " + ex.object.str() + " where mechanical events are allowed");
    } else {
      need(std::isfinite(ex.value) && !object->thresholds[ex.channel].contains(ex.value),
           "excursion value on " + ex.object.str() + " is inside its bounds");
    }
  }
}

}  // namespace

MuseumFile parse_museum_file(const json& document) {
  StrictObject root(document, "config", kCode);
  if (root.integer("schema_version") != kConfigSchemaVersion) {
    root.fail("unsupported schema_version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  MuseumFile file;
  auto& museum = file.museum;
  museum.languages = parse_strings(root, "languages");
  museum.default_language = root.str("default_language");
  museum.ticket_price = root.number("ticket_price");
  museum.map = parse_map(root);
  parse_objects(root, museum);
  parse_readers(root.at("readers"), museum);
  if (const auto* loc = root.maybe("localization")) {
    StrictObject l(*loc, "localization", kCode);
    museum.localization.noise_sigma_r = l.number("sigma_r");
    museum.localization.noise_sigma_theta = l.number("sigma_theta");
    l.finish();
  }
  if (root.has("survey_questions")) museum.survey_questions = parse_strings(root, "survey_questions");
  if (const auto* srv = root.maybe("server")) {
    StrictObject s(*srv, "server", kCode);
    if (s.has("location_epsilon")) museum.location_epsilon = s.number("location_epsilon");
    s.finish();
  }
  for (auto& [id, object] : museum.objects) {
    if (auto node = museum.map.node_of_object(id)) {
      object.home_polar = radio::to_polar(museum.map.node(*node).position, museum.central_reader.position);
    }
  }
  file.scenario = parse_scenario(root.at("simulation"));
  root.finish();
  return file;
}

MuseumFile load_museum_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_museum_file(document);
}

void MuseumFile::validate() const {
  std::vector<std::string> problems;
  try {
    museum.validate();
  } catch (const Error& e) {
    problems.emplace_back(e.what());
  }
  if (museum.localization.noise_sigma_r < 0.0 || museum.localization.noise_sigma_theta < 0.0) {
    problems.emplace_back("localization sigmas must be >= 0");
  }
  check_scenario(museum, scenario, problems);
  if (!problems.empty()) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < problems.size(); ++i) msg << (i ? "; " : "") << problems[i];
    throw Error(ErrorCode::ConfigError, msg.str());
  }
}

}  // namespace museum::sim
