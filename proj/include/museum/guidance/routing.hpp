#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "museum/core/ids.hpp"
#include "museum/core/map.hpp"

namespace museum::guidance {

enum class RouteMode { Shortest, CrowdBalanced };

inline constexpr double kDefaultCrowdAlpha = 0.5;
/// Above this many targets the visiting order comes from nearest neighbour
/// followed by 2-opt instead of an exact search.
inline constexpr std::size_t kExactRoutingLimit = 10;

struct RouteRequest {
  NodeId current_node;
  std::set<ObjectId> unvisited;
  RouteMode mode = RouteMode::Shortest;
  std::map<ObjectId, std::int64_t> crowd;
  double alpha = kDefaultCrowdAlpha;
};

struct RouteLeg {
  ObjectId object;
  NodeId from;
  NodeId to;
  std::int64_t walk_seconds = 0;
  double cost = 0.0;

  friend bool operator==(const RouteLeg&, const RouteLeg&) = default;
};

struct RoutePlan {
  std::vector<NodeId> path;      // walk, starting at current_node
  std::vector<ObjectId> stops;   // visiting order, each target exactly once
  std::vector<RouteLeg> legs;
  std::int64_t total_walk_seconds = 0;
  double cost = 0.0;             // objective value of the mode used

  friend bool operator==(const RoutePlan&, const RoutePlan&) = default;
};

/// All-pairs shortest walks. Among equal-time walks the lexicographically
/// smallest node-id sequence is kept.
class PathTable {
 public:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

  explicit PathTable(const MuseumMap& map);

  std::int64_t walk_time(std::size_t from, std::size_t to) const { return dist_[from][to]; }
  /// Node indices from `from` to `to`, both inclusive; empty if unreachable.
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const;
  const MuseumMap& map() const noexcept { return *map_; }

 private:
  const MuseumMap* map_;
  std::vector<std::vector<std::int64_t>> dist_;
  std::vector<std::vector<std::size_t>> pred_;  // predecessor of `to` on the walk from `from`
};

/// Shortest: minimize total walk time over visiting orders.
/// CrowdBalanced: minimize total walk + alpha * D * sum_i crowd(stop_i) * (n - i) / n,
/// where D is the mean walk time from the current node to the targets and i
/// the 0-based stop index, so crowded objects are pushed later in the tour.
/// Ties go to the lexicographically smallest stop node-id sequence.
/// Throws Unreachable / UnknownSubject / DomainError.
RoutePlan recommend_route(const MuseumMap& map, const RouteRequest& request);
RoutePlan recommend_route(const PathTable& paths, const RouteRequest& request);

/// Objective value of visiting `stops` in the given order from `current`,
/// under the request's mode. Used by recommend_route and exposed for audits.
double route_cost(const PathTable& paths, const RouteRequest& request,
                  const std::vector<std::size_t>& stop_nodes);

}  // namespace museum::guidance
