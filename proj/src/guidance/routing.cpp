#include "museum/guidance/routing.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "museum/core/error.hpp"

namespace museum::guidance {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool id_sequence_less(const MuseumMap& map, const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [&map](std::size_t x, std::size_t y) {
                                        return map.node(x).id < map.node(y).id;
                                      });
}

}  // namespace

// ---- PathTable ----------------------------------------------------------

PathTable::PathTable(const MuseumMap& map)
    : map_(&map),
      dist_(map.size(), std::vector<std::int64_t>(map.size(), kUnreachable)),
      pred_(map.size(), std::vector<std::size_t>(map.size(), kNone)) {
  using Item = std::pair<std::int64_t, std::size_t>;
  for (std::size_t source = 0; source < map.size(); ++source) {
    auto& dist = dist_[source];
    auto& pred = pred_[source];
    std::vector<bool> done(map.size(), false);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0;
    pred[source] = source;
    queue.emplace(0, source);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (done[u]) continue;
      done[u] = true;
      for (const auto& [v, w] : map.neighbors(u)) {
        const std::int64_t nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          pred[v] = u;
          queue.emplace(nd, v);
        } else if (nd == dist[v] && v != source && !done[v] && pred[v] != u) {
          auto via_u = path(source, u);
          via_u.push_back(v);
          if (id_sequence_less(map, via_u, path(source, v))) pred[v] = u;
        }
      }
    }
  }
}

std::vector<std::size_t> PathTable::path(std::size_t from, std::size_t to) const {
  if (dist_.at(from).at(to) == kUnreachable) return {};
  std::vector<std::size_t> out{to};
  while (out.back() != from) out.push_back(pred_[from][out.back()]);
  std::reverse(out.begin(), out.end());
  return out;
}

// ---- Objective -----------------------------------------------------------

namespace {

struct Problem {
  const PathTable* paths;
  std::size_t start;
  std::vector<ObjectId> objects;     // sorted by node id
  std::vector<std::size_t> nodes;    // node index per target
  std::vector<double> crowd;
  bool crowd_mode = false;
  double alpha = 0.0;
  double scale = 0.0;                // mean walk from start to the targets

  std::size_t size() const { return nodes.size(); }

  double walk(std::size_t from_node, std::size_t target) const {
    return static_cast<double>(paths->walk_time(from_node, nodes[target]));
  }

  double penalty(std::size_t target, std::size_t position) const {
    if (!crowd_mode) return 0.0;
    const double n = static_cast<double>(size());
    return alpha * scale * crowd[target] * (n - static_cast<double>(position)) / n;
  }

  double leg(std::size_t from_node, std::size_t target, std::size_t position) const {
    return walk(from_node, target) + penalty(target, position);
  }

  double cost(const std::vector<std::size_t>& order) const {
    double total = 0.0;
    std::size_t at = start;
    for (std::size_t i = 0; i < order.size(); ++i) {
      total += leg(at, order[i], i);
      at = nodes[order[i]];
    }
    return total;
  }
};

Problem make_problem(const PathTable& paths, const RouteRequest& request) {
  const MuseumMap& map = paths.map();
  if (request.unvisited.empty()) throw Error(ErrorCode::DomainError, "route request has no targets");
  if (!(request.alpha >= 0.0)) throw Error(ErrorCode::DomainError, "crowd alpha must be >= 0");

  Problem p;
  p.paths = &paths;
  p.start = map.index_of(request.current_node);
  p.crowd_mode = request.mode == RouteMode::CrowdBalanced;
  p.alpha = request.alpha;

  std::vector<std::pair<std::size_t, ObjectId>> targets;
  for (const auto& object : request.unvisited) {
    auto node = map.node_of_object(object);
    if (!node) throw Error(ErrorCode::UnknownSubject, "object " + object.str() + " is not on the map");
    if (paths.walk_time(p.start, *node) == PathTable::kUnreachable) {
      throw Error(ErrorCode::Unreachable, "object " + object.str() + " cannot be reached from " +
                                              request.current_node.str());
    }
    targets.emplace_back(*node, object);
  }
  std::sort(targets.begin(), targets.end(), [&map](const auto& a, const auto& b) {
    return map.node(a.first).id < map.node(b.first).id;
  });

  double sum = 0.0;
  for (const auto& [node, object] : targets) {
    p.nodes.push_back(node);
    p.objects.push_back(object);
    auto it = request.crowd.find(object);
    p.crowd.push_back(it == request.crowd.end() ? 0.0 : static_cast<double>(std::max<std::int64_t>(0, it->second)));
    sum += static_cast<double>(paths.walk_time(p.start, node));
  }
  p.scale = sum / static_cast<double>(targets.size());
  return p;
}

// Held-Karp over (visited set, last stop). Labels compare by cost, then by
// the stop sequence, which equals comparing node-id sequences because targets
// are sorted by node id.
std::vector<std::size_t> exact_order(const Problem& p) {
  const std::size_t n = p.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best((full + 1) * n, kInf);
  std::vector<std::size_t> parent((full + 1) * n, kNone);
  auto at = [n](std::size_t set, std::size_t last) { return set * n + last; };

  auto sequence = [&](std::size_t set, std::size_t last) {
    std::vector<std::size_t> seq;
    while (last != kNone) {
      seq.push_back(last);
      const std::size_t prev = parent[at(set, last)];
      set &= ~(std::size_t{1} << last);
      last = prev;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };

  for (std::size_t j = 0; j < n; ++j) best[at(std::size_t{1} << j, j)] = p.leg(p.start, j, 0);

  for (std::size_t set = 1; set <= full; ++set) {
    const auto position = static_cast<std::size_t>(std::popcount(set));
    for (std::size_t last = 0; last < n; ++last) {
      if (!(set >> last & 1)) continue;
      const double base = best[at(set, last)];
      if (base == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (set >> j & 1) continue;
        const std::size_t next = set | (std::size_t{1} << j);
        const double candidate = base + p.leg(p.nodes[last], j, position);
        double& slot = best[at(next, j)];
        std::size_t& from = parent[at(next, j)];
        if (candidate < slot) {
          slot = candidate;
          from = last;
        } else if (candidate == slot && from != last) {
          auto mine = sequence(set, last);
          auto theirs = sequence(set, from);
          // Both prefixes end before j, so comparing them is enough.
          if (mine < theirs) from = last;
        }
      }
    }
  }

  std::size_t winner = kNone;
  for (std::size_t last = 0; last < n; ++last) {
    const double c = best[at(full, last)];
    if (winner == kNone || c < best[at(full, winner)]) {
      winner = last;
    } else if (c == best[at(full, winner)] && sequence(full, last) < sequence(full, winner)) {
      winner = last;
    }
  }
  return sequence(full, winner);
}

std::vector<std::size_t> heuristic_order(const Problem& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  std::size_t at = p.start;
  for (std::size_t position = 0; position < n; ++position) {
    std::size_t pick = kNone;
    double pick_cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double c = p.leg(at, j, position);
      if (pick == kNone || c < pick_cost) {
        pick = j;
        pick_cost = c;
      }
    }
    used[pick] = true;
    order.push_back(pick);
    at = p.nodes[pick];
  }

  double current = p.cost(order);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < n && !improved; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        auto candidate = order;
        std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i),
                     candidate.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        const double c = p.cost(candidate);
        if (c < current) {
          order = std::move(candidate);
          current = c;
          improved = true;
          break;
        }
      }
    }
  }
  return order;
}

RoutePlan build_plan(const Problem& p, const std::vector<std::size_t>& order) {
  const MuseumMap& map = p.paths->map();
  RoutePlan plan;
  plan.path.push_back(map.node(p.start).id);
  std::size_t at = p.start;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t target = order[i];
    const std::size_t node = p.nodes[target];
    RouteLeg leg;
    leg.object = p.objects[target];
    leg.from = map.node(at).id;
    leg.to = map.node(node).id;
    leg.walk_seconds = p.paths->walk_time(at, node);
    leg.cost = p.leg(at, target, i);
    const auto walk = p.paths->path(at, node);
    for (std::size_t k = 1; k < walk.size(); ++k) plan.path.push_back(map.node(walk[k]).id);
    plan.stops.push_back(leg.object);
    plan.total_walk_seconds += leg.walk_seconds;
    plan.legs.push_back(std::move(leg));
    at = node;
  }
  plan.cost = p.cost(order);
  return plan;
}

}  // namespace

double route_cost(const PathTable& paths, const RouteRequest& request, const std::vector<std::size_t>& stop_nodes) {
  Problem p = make_problem(paths, request);
  std::vector<std::size_t> order;
  for (std::size_t node : stop_nodes) {
    auto it = std::find(p.nodes.begin(), p.nodes.end(), node);
    if (it == p.nodes.end()) throw Error(ErrorCode::DomainError, "stop is not a requested target");
    order.push_back(static_cast<std::size_t>(it - p.nodes.begin()));
  }
  if (order.size() != p.size()) throw Error(ErrorCode::DomainError, "order must cover every target once");
  return p.cost(order);
}

RoutePlan recommend_route(const PathTable& paths, const RouteRequest& request) {
  const Problem p = make_problem(paths, request);
  const auto order = p.size() <= kExactRoutingLimit ? exact_order(p) : heuristic_order(p);
  return build_plan(p, order);
}

RoutePlan recommend_route(const MuseumMap& map, const RouteRequest& request) {
  const PathTable paths(map);
  return recommend_route(paths, request);
}

}  // namespace museum::guidance
