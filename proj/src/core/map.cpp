#include "museum/core/map.hpp"

#include <queue>
#include <set>

#include "museum/core/error.hpp"

namespace museum {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::EntryGate: return "entry_gate";
    case NodeKind::ExitGate: return "exit_gate";
    case NodeKind::Exhibit: return "exhibit";
  }
  return "unknown";
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
  for (auto kind : {NodeKind::EntryGate, NodeKind::ExitGate, NodeKind::Exhibit}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

MuseumMap::MuseumMap(std::vector<MapNode> nodes, std::vector<MapEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), adjacency_(nodes_.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    index_.emplace(nodes_[i].id, i);  // first occurrence wins on duplicates
    if (nodes_[i].kind == NodeKind::Exhibit && nodes_[i].object) {
      object_nodes_.emplace(*nodes_[i].object, i);
    }
  }
  for (const auto& edge : edges_) {
    auto a = find(edge.a);
    auto b = find(edge.b);
    if (!a || !b || *a == *b) continue;
    adjacency_[*a].push_back({*b, edge.walk_time});
    adjacency_[*b].push_back({*a, edge.walk_time});
  }
}

std::optional<std::size_t> MuseumMap::find(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MuseumMap::index_of(const NodeId& id) const {
  auto found = find(id);
  if (!found) throw Error(ErrorCode::UnknownSubject, "unknown node '" + id.str() + "'");
  return *found;
}

std::optional<std::size_t> MuseumMap::node_of_object(const ObjectId& object) const {
  auto it = object_nodes_.find(object);
  if (it == object_nodes_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> MuseumMap::nodes_of_kind(NodeKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == kind) out.push_back(i);
  }
  return out;
}

std::vector<ObjectId> MuseumMap::object_ids() const {
  std::vector<ObjectId> out;
  out.reserve(object_nodes_.size());
  for (const auto& [object, index] : object_nodes_) out.push_back(object);
  return out;
}

namespace {

void check_structure(const MuseumMap& map, std::vector<MapViolation>& out) {
  std::set<NodeId> ids;
  for (const auto& node : map.nodes()) {
    if (node.id.empty()) out.push_back({"empty node id", ""});
    if (!ids.insert(node.id).second) out.push_back({"duplicate node id", node.id.str()});
  }
  if (map.nodes_of_kind(NodeKind::EntryGate).empty()) out.push_back({"missing entry gate", ""});
  if (map.nodes_of_kind(NodeKind::ExitGate).empty()) out.push_back({"missing exit gate", ""});

  for (const auto& edge : map.edges()) {
    const std::string name = edge.a.str() + "-" + edge.b.str();
    if (edge.walk_time <= 0) out.push_back({"non-positive walk_time", name});
    if (!map.find(edge.a) || !map.find(edge.b)) out.push_back({"unknown edge endpoint", name});
    if (edge.a == edge.b) out.push_back({"self loop", name});
  }

  std::set<ObjectId> referenced;
  for (const auto& node : map.nodes()) {
    if (node.kind == NodeKind::Exhibit) {
      if (!node.object || node.object->empty()) {
        out.push_back({"dangling object reference", node.id.str() + " has no object"});
      } else if (!referenced.insert(*node.object).second) {
        out.push_back({"duplicate object reference", node.object->str()});
      }
    } else if (node.object) {
      out.push_back({"object on gate node", node.id.str()});
    }
  }

  if (map.size() > 0) {
    std::vector<bool> seen(map.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      auto at = frontier.front();
      frontier.pop();
      for (const auto& next : map.neighbors(at)) {
        if (!seen[next.node]) {
          seen[next.node] = true;
          ++reached;
          frontier.push(next.node);
        }
      }
    }
    if (reached != map.size()) {
      out.push_back({"disconnected graph", std::to_string(map.size() - reached) + " node(s) unreachable"});
    }
  } else {
    out.push_back({"empty map", ""});
  }
}

}  // namespace

std::vector<MapViolation> validate_map(const MuseumMap& map) {
  std::vector<MapViolation> out;
  check_structure(map, out);
  return out;
}

std::vector<MapViolation> validate_map(const MuseumMap& map,
                                       const std::map<ObjectId, ExhibitObject>& known_objects) {
  std::vector<MapViolation> out;
  check_structure(map, out);
  for (const auto& node : map.nodes()) {
    if (node.kind == NodeKind::Exhibit && node.object && !node.object->empty() &&
        !known_objects.contains(*node.object)) {
      out.push_back({"dangling object reference", node.id.str() + " -> " + node.object->str()});
    }
  }
  for (const auto& [id, object] : known_objects) {
    if (!map.node_of_object(id)) out.push_back({"object without exhibit node", id.str()});
  }
  return out;
}

}  // namespace museum
