#include "museum/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "museum/core/error.hpp"

namespace museum {

const ExhibitObject* MuseumConfig::find_object(const ObjectId& id) const {
  auto it = objects.find(id);
  return it == objects.end() ? nullptr : &it->second;
}

const radio::ReaderModel* MuseumConfig::find_gate(const ReaderId& id) const {
  auto it = gate_readers.find(id);
  return it == gate_readers.end() ? nullptr : &it->second;
}

const ExhibitObject* MuseumConfig::object_by_tag(const TagId& tag) const {
  for (const auto& [id, object] : objects) {
    if (object.tag.id == tag) return &object;
  }
  return nullptr;
}

bool MuseumConfig::supports_language(const std::string& language) const {
  return std::find(languages.begin(), languages.end(), language) != languages.end();
}

void MuseumConfig::validate() const {
  std::vector<std::string> problems;
  for (const auto& v : validate_map(map, objects)) {
    problems.push_back(v.code + (v.detail.empty() ? "" : " (" + v.detail + ")"));
  }
  if (languages.empty()) problems.push_back("no languages configured");
  if (!supports_language(default_language)) problems.push_back("default language not in languages");
  if (ticket_price < 0.0) problems.push_back("negative ticket price");
  if (!(location_epsilon > 0.0)) problems.push_back("location epsilon must be > 0");

  auto check_reader = [&problems](const radio::ReaderModel& r) {
    try {
      r.validate();
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  };
  check_reader(central_reader);
  check_reader(ticket_reader);
  if (central_reader.role != radio::ReaderRole::Central) problems.push_back("central reader role");

  for (std::size_t i = 0; i < map.size(); ++i) {
    const auto& node = map.node(i);
    if (node.kind == NodeKind::Exhibit) continue;
    const auto* gate = find_gate(ReaderId(node.id.str()));
    if (!gate) {
      problems.push_back("gate " + node.id.str() + " has no reader");
      continue;
    }
    check_reader(*gate);
    const auto expected = node.kind == NodeKind::EntryGate ? radio::ReaderRole::GateIn : radio::ReaderRole::GateOut;
    if (gate->role != expected) problems.push_back("gate reader " + node.id.str() + " has the wrong role");
  }

  std::set<TagId> tags;
  for (const auto& [id, object] : objects) {
    if (object.id != id) problems.push_back("object key mismatch " + id.str());
    if (object.tag.kind != TagKind::Object) problems.push_back("object " + id.str() + " tag kind");
    if (!tags.insert(object.tag.id).second) problems.push_back("duplicate tag " + object.tag.id.str());
    if (object.info.empty()) problems.push_back("object " + id.str() + " has no info");
    for (const auto& language : languages) {
      auto it = object.info.find(language);
      if (it == object.info.end() || it->second.content.empty()) {
        problems.push_back("object " + id.str() + " lacks info for " + language);
      }
    }
    for (std::size_t c = 0; c < kSensorChannels; ++c) {
      const auto& b = object.thresholds.bounds[c];
      if (!(b.min <= b.max)) {
        problems.push_back("object " + id.str() + " threshold min > max for " +
                           std::string(to_string(static_cast<Channel>(c))));
      }
    }
    if (auto node = map.node_of_object(id)) {
      const auto pos = map.node(*node).position;
      if (distance(pos, central_reader.position) > central_reader.active_range) {
        problems.push_back("object " + id.str() + " outside central reader range");
      }
    }
  }

  std::set<std::string> questions;
  for (const auto& q : survey_questions) {
    if (!questions.insert(q).second) problems.push_back("duplicate survey question " + q);
  }

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid museum configuration: ";
    for (std::size_t i = 0; i < problems.size(); ++i) msg << (i ? "; " : "") << problems[i];
    throw Error(ErrorCode::ConfigError, msg.str());
  }
}

}  // namespace museum
