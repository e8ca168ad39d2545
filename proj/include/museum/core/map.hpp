#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "museum/core/ids.hpp"
#include "museum/core/types.hpp"

namespace museum {

enum class NodeKind { EntryGate, ExitGate, Exhibit };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

struct MapNode {
  NodeId id;
  NodeKind kind = NodeKind::Exhibit;
  Position position;
  std::optional<ObjectId> object;  // set for exhibits only

  friend bool operator==(const MapNode&, const MapNode&) = default;
};

struct MapEdge {
  NodeId a;
  NodeId b;
  Tick walk_time = 0;

  friend bool operator==(const MapEdge&, const MapEdge&) = default;
};

/// Undirected walking graph of gates and exhibits. Node ids are mapped to
/// dense indices in insertion order; edges naming unknown nodes are kept in
/// edges() but left out of the adjacency lists (validate_map reports them).
class MuseumMap {
 public:
  struct Adjacent {
    std::size_t node;
    Tick walk_time;
  };

  MuseumMap() = default;
  MuseumMap(std::vector<MapNode> nodes, std::vector<MapEdge> edges);

  std::span<const MapNode> nodes() const noexcept { return nodes_; }
  std::span<const MapEdge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  const MapNode& node(std::size_t index) const { return nodes_.at(index); }
  std::optional<std::size_t> find(const NodeId& id) const;
  /// Throws UnknownSubject when the id is not on the map.
  std::size_t index_of(const NodeId& id) const;
  std::optional<std::size_t> node_of_object(const ObjectId& object) const;

  std::span<const Adjacent> neighbors(std::size_t index) const { return adjacency_.at(index); }
  std::vector<std::size_t> nodes_of_kind(NodeKind kind) const;
  std::vector<ObjectId> object_ids() const;

 private:
  std::vector<MapNode> nodes_;
  std::vector<MapEdge> edges_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::map<ObjectId, std::size_t> object_nodes_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

struct MapViolation {
  std::string code;  // e.g. "missing exit gate"
  std::string detail;

  friend bool operator==(const MapViolation&, const MapViolation&) = default;
};

/// Every broken map invariant; an empty result means the map is valid.
/// The overload with `known_objects` also checks that exhibit references
/// resolve to configured objects.
std::vector<MapViolation> validate_map(const MuseumMap& map);
std::vector<MapViolation> validate_map(const MuseumMap& map,
                                       const std::map<ObjectId, ExhibitObject>& known_objects);

}  // namespace museum
