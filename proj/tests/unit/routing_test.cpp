#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "museum/core/error.hpp"
#include "museum/guidance/routing.hpp"

using namespace museum;
using namespace museum::guidance;

namespace {

MuseumMap two_object_fixture() {
  // Both objects are 10 s from the start and 10 s from each other.
  std::vector<MapNode> nodes = {
      {NodeId("gin"), NodeKind::EntryGate, {0, 0}, std::nullopt},
      {NodeId("gout"), NodeKind::ExitGate, {0, 10}, std::nullopt},
      {NodeId("n1"), NodeKind::Exhibit, {10, 0}, ObjectId("o1")},
      {NodeId("n2"), NodeKind::Exhibit, {-10, 0}, ObjectId("o2")},
  };
  std::vector<MapEdge> edges = {{NodeId("gin"), NodeId("n1"), 10},
                                {NodeId("gin"), NodeId("n2"), 10},
                                {NodeId("n1"), NodeId("n2"), 10},
                                {NodeId("gin"), NodeId("gout"), 5}};
  return MuseumMap(nodes, edges);
}

std::set<ObjectId> random_targets(RngStream& rng, const MuseumMap& map, std::size_t max_targets) {
  auto objects = map.object_ids();
  std::set<ObjectId> out;
  const auto want = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(std::min(max_targets, objects.size()))));
  while (out.size() < want) out.insert(objects[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(objects.size()) - 1))]);
  return out;
}

void expect_valid_plan(const MuseumMap& map, const RouteRequest& request, const RoutePlan& plan) {
  ASSERT_FALSE(plan.path.empty());
  EXPECT_EQ(plan.path.front(), request.current_node);
  for (std::size_t i = 0; i + 1 < plan.path.size(); ++i) {
    const auto a = map.index_of(plan.path[i]);
    const auto b = map.index_of(plan.path[i + 1]);
    const auto adj = map.neighbors(a);
    EXPECT_TRUE(std::any_of(adj.begin(), adj.end(), [&](const auto& e) { return e.node == b; }))
        << plan.path[i].str() << " -> " << plan.path[i + 1].str();
  }
  std::multiset<ObjectId> stops(plan.stops.begin(), plan.stops.end());
  EXPECT_EQ(stops, std::multiset<ObjectId>(request.unvisited.begin(), request.unvisited.end()));
  ASSERT_EQ(plan.legs.size(), plan.stops.size());
  std::int64_t walk = 0;
  for (std::size_t i = 0; i < plan.legs.size(); ++i) {
    EXPECT_EQ(plan.legs[i].object, plan.stops[i]);
    walk += plan.legs[i].walk_seconds;
  }
  EXPECT_EQ(walk, plan.total_walk_seconds);
  if (!plan.stops.empty()) EXPECT_EQ(plan.path.back(), map.node(*map.node_of_object(plan.stops.back())).id);
}

}  // namespace

TEST(PathTable, MatchesFloydWarshall) {
  RngStream rng(3, "paths");
  for (int trial = 0; trial < 100; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(2, 12)));
    const PathTable paths(map);
    const auto fw = oracle::floyd_warshall(map);
    for (std::size_t a = 0; a < map.size(); ++a) {
      for (std::size_t b = 0; b < map.size(); ++b) {
        ASSERT_EQ(paths.walk_time(a, b), fw[a][b]);
        const auto p = paths.path(a, b);
        ASSERT_EQ(p.front(), a);
        ASSERT_EQ(p.back(), b);
        std::int64_t sum = 0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          std::int64_t best = -1;
          for (const auto& e : map.neighbors(p[i])) {
            if (e.node == p[i + 1] && (best < 0 || e.walk_time < best)) best = e.walk_time;
          }
          ASSERT_GE(best, 0);
          sum += best;
        }
        ASSERT_EQ(sum, fw[a][b]);
      }
    }
  }
}

TEST(Routing, SingleObjectIsShortestPath) {
  RngStream rng(8, "single");
  for (int trial = 0; trial < 50; ++trial) {
    const auto map = test::random_map(rng, 7);
    const auto fw = oracle::floyd_warshall(map);
    const auto objects = map.object_ids();
    const auto& target = objects[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(objects.size()) - 1))];
    RouteRequest req{NodeId("gin"), {target}, RouteMode::Shortest, {}, 0.5};
    const auto plan = recommend_route(map, req);
    EXPECT_EQ(plan.total_walk_seconds, fw[0][*map.node_of_object(target)]);
    expect_valid_plan(map, req, plan);
  }
}

TEST(Routing, ShortestMatchesBruteForce) {
  RngStream rng(21, "brute");
  for (int trial = 0; trial < 150; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(3, 8)));
    RouteRequest req{NodeId(rng.bernoulli(0.5) ? "gin" : "gout"), random_targets(rng, map, 5), RouteMode::Shortest, {}, 0.5};
    const auto plan = recommend_route(map, req);
    const auto best = oracle::brute_force_route(map, req);
    EXPECT_EQ(static_cast<double>(plan.total_walk_seconds), best.cost);
    EXPECT_EQ(plan.cost, best.cost);
    std::vector<std::size_t> stop_nodes;
    for (const auto& o : plan.stops) stop_nodes.push_back(*map.node_of_object(o));
    EXPECT_EQ(stop_nodes, best.stops);
    expect_valid_plan(map, req, plan);
  }
}

TEST(Routing, CrowdBalancedMatchesBruteForce) {
  RngStream rng(22, "brute-crowd");
  for (int trial = 0; trial < 150; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(3, 8)));
    RouteRequest req{NodeId("gin"), random_targets(rng, map, 5), RouteMode::CrowdBalanced, {}, rng.uniform(0.0, 2.0)};
    for (const auto& o : map.object_ids()) req.crowd[o] = rng.uniform_int(0, 6);
    const auto plan = recommend_route(map, req);
    const auto best = oracle::brute_force_route(map, req);
    EXPECT_NEAR(plan.cost, best.cost, 1e-9 * std::max(1.0, best.cost));
    std::vector<std::size_t> stop_nodes;
    for (const auto& o : plan.stops) stop_nodes.push_back(*map.node_of_object(o));
    EXPECT_NEAR(oracle::route_objective(map, req, stop_nodes), best.cost, 1e-9 * std::max(1.0, best.cost));
    expect_valid_plan(map, req, plan);
  }
}

TEST(Routing, ZeroAlphaEqualsShortest) {
  RngStream rng(23, "alpha0");
  for (int trial = 0; trial < 100; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(3, 8)));
    RouteRequest req{NodeId("gin"), random_targets(rng, map, 5), RouteMode::Shortest, {}, 0.0};
    for (const auto& o : map.object_ids()) req.crowd[o] = rng.uniform_int(0, 9);
    const auto shortest = recommend_route(map, req);
    req.mode = RouteMode::CrowdBalanced;
    const auto balanced = recommend_route(map, req);
    EXPECT_EQ(balanced.cost, shortest.cost);
    EXPECT_EQ(balanced.stops, shortest.stops);
  }
}

TEST(Routing, LessCrowdedObjectFirst) {
  const auto map = two_object_fixture();
  RouteRequest req{NodeId("gin"), {ObjectId("o1"), ObjectId("o2")}, RouteMode::CrowdBalanced,
                   {{ObjectId("o1"), 5}, {ObjectId("o2"), 0}}, 1.0};
  EXPECT_EQ(recommend_route(map, req).stops, (std::vector<ObjectId>{ObjectId("o2"), ObjectId("o1")}));
  req.crowd = {{ObjectId("o1"), 0}, {ObjectId("o2"), 5}};
  EXPECT_EQ(recommend_route(map, req).stops, (std::vector<ObjectId>{ObjectId("o1"), ObjectId("o2")}));
  req.mode = RouteMode::Shortest;
  req.crowd = {{ObjectId("o1"), 5}, {ObjectId("o2"), 0}};
  // Equal walks: the lexicographic tie-break decides.
  EXPECT_EQ(recommend_route(map, req).stops, (std::vector<ObjectId>{ObjectId("o1"), ObjectId("o2")}));
}

TEST(Routing, CrowdIncreaseNeverMovesObjectEarlier) {
  RngStream rng(24, "monotone");
  for (int trial = 0; trial < 100; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(4, 8)));
    RouteRequest req{NodeId("gin"), random_targets(rng, map, 5), RouteMode::CrowdBalanced, {}, rng.uniform(0.1, 2.0)};
    for (const auto& o : map.object_ids()) req.crowd[o] = rng.uniform_int(0, 5);
    const auto before = recommend_route(map, req);
    const auto& o = before.stops[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(before.stops.size()) - 1))];
    req.crowd[o] += rng.uniform_int(1, 10);
    const auto after = recommend_route(map, req);
    const auto pos = [&](const RoutePlan& p) { return std::find(p.stops.begin(), p.stops.end(), o) - p.stops.begin(); };
    EXPECT_GE(pos(after), pos(before));
  }
}

TEST(Routing, HeuristicAboveExactLimitStillValid) {
  test::GridSpec spec;
  spec.exhibits = 16;
  spec.columns = 4;
  const auto file = test::grid_museum(spec);
  const auto& map = file.museum.map;
  RouteRequest req{NodeId("in"), {}, RouteMode::Shortest, {}, 0.5};
  for (const auto& o : map.object_ids()) req.unvisited.insert(o);
  ASSERT_GT(req.unvisited.size(), kExactRoutingLimit);
  const auto plan = recommend_route(map, req);
  expect_valid_plan(map, req, plan);
  // Each exhibit is at least one edge away from the previous stop.
  EXPECT_GE(plan.total_walk_seconds, static_cast<std::int64_t>(req.unvisited.size()) * 4);
  const PathTable paths(map);
  std::vector<std::size_t> stop_nodes;
  for (const auto& o : plan.stops) stop_nodes.push_back(*map.node_of_object(o));
  EXPECT_DOUBLE_EQ(route_cost(paths, req, stop_nodes), plan.cost);
  req.mode = RouteMode::CrowdBalanced;
  for (const auto& o : map.object_ids()) req.crowd[o] = 1;
  expect_valid_plan(map, req, recommend_route(map, req));
}

TEST(Routing, Errors) {
  std::vector<MapNode> nodes = {
      {NodeId("gin"), NodeKind::EntryGate, {0, 0}, std::nullopt},
      {NodeId("gout"), NodeKind::ExitGate, {1, 0}, std::nullopt},
      {NodeId("n1"), NodeKind::Exhibit, {2, 0}, ObjectId("o1")},
      {NodeId("island"), NodeKind::Exhibit, {9, 9}, ObjectId("o9")},
  };
  const MuseumMap map(nodes, {{NodeId("gin"), NodeId("gout"), 2}, {NodeId("gout"), NodeId("n1"), 2}});
  RouteRequest req{NodeId("gin"), {ObjectId("o9")}, RouteMode::Shortest, {}, 0.5};
  EXPECT_EQ(test::code_of([&] { recommend_route(map, req); }), ErrorCode::Unreachable);
  req.unvisited = {};
  EXPECT_EQ(test::code_of([&] { recommend_route(map, req); }), ErrorCode::DomainError);
  req.unvisited = {ObjectId("missing")};
  EXPECT_EQ(test::code_of([&] { recommend_route(map, req); }), ErrorCode::UnknownSubject);
  req.unvisited = {ObjectId("o1")};
  req.current_node = NodeId("nowhere");
  EXPECT_EQ(test::code_of([&] { recommend_route(map, req); }), ErrorCode::UnknownSubject);
  req.current_node = NodeId("gin");
  req.mode = RouteMode::CrowdBalanced;
  req.alpha = -1.0;
  EXPECT_EQ(test::code_of([&] { recommend_route(map, req); }), ErrorCode::DomainError);
}
