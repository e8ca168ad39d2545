#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "museum/guidance/guidance.hpp"
#include "museum/server/server.hpp"
#include "museum/sim/simulation.hpp"

using namespace museum;
using namespace museum::guidance;

namespace {

SmartTicket ticket_with_history(std::vector<Tick> dwells) {
  SmartTicket t;
  t.id = TicketId("t1");
  t.tag = {TagId("tag-t1"), true, TagKind::Ticket};
  for (std::size_t i = 0; i < dwells.size(); ++i) t.visited.push_back({ObjectId("seen" + std::to_string(i)), 0, dwells[i]});
  return t;
}

MuseumMap line_map() {
  // in -10- n1 -10- n2 -10- n3 -10- out
  std::vector<MapNode> nodes = {
      {NodeId("in"), NodeKind::EntryGate, {0, 0}, std::nullopt},
      {NodeId("out"), NodeKind::ExitGate, {40, 0}, std::nullopt},
      {NodeId("n1"), NodeKind::Exhibit, {10, 0}, ObjectId("o1")},
      {NodeId("n2"), NodeKind::Exhibit, {20, 0}, ObjectId("o2")},
      {NodeId("n3"), NodeKind::Exhibit, {30, 0}, ObjectId("o3")},
  };
  return MuseumMap(nodes, {{NodeId("in"), NodeId("n1"), 10},
                           {NodeId("n1"), NodeId("n2"), 10},
                           {NodeId("n2"), NodeId("n3"), 10},
                           {NodeId("n3"), NodeId("out"), 10}});
}

}  // namespace

TEST(RemainingTime, NothingLeftIsZero) {
  EXPECT_EQ(estimate_remaining_time(ticket_with_history({60}), {}, line_map(), NodeId("in"), 120.0), 0.0);
}

TEST(RemainingTime, MeanOwnDwellTimesCountPlusWalk) {
  const auto map = line_map();
  const std::set<ObjectId> left{ObjectId("o1"), ObjectId("o2"), ObjectId("o3")};
  // W: in -> o1 -> o2 -> o3 is 30 s.
  EXPECT_EQ(estimate_remaining_time(ticket_with_history({60, 120}), left, map, NodeId("in"), 500.0), 90.0 * 3 + 30.0);
}

TEST(RemainingTime, DefaultDwellWithoutHistory) {
  const auto map = line_map();
  // W: in -> o2 -> o3 is 30 s.
  EXPECT_EQ(estimate_remaining_time(ticket_with_history({}), {ObjectId("o2"), ObjectId("o3")}, map, NodeId("in"), 120.0),
            120.0 * 2 + 30.0);
}

TEST(RemainingTime, RejectsNonPositiveDefault) {
  EXPECT_EQ(test::code_of([] { estimate_remaining_time(ticket_with_history({}), {ObjectId("o1")}, line_map(), NodeId("in"), 0.0); }),
            ErrorCode::DomainError);
}

TEST(RemainingTime, MonotoneInUnvisitedCount) {
  RngStream rng(31, "remaining");
  for (int trial = 0; trial < 60; ++trial) {
    const auto map = test::random_map(rng, static_cast<int>(rng.uniform_int(4, 9)));
    auto objects = map.object_ids();
    std::vector<Tick> history;
    for (int i = 0; i < rng.uniform_int(0, 4); ++i) history.push_back(rng.uniform_int(1, 300));
    const auto ticket = ticket_with_history(history);
    std::set<ObjectId> left;
    double previous = 0.0;
    for (const auto& o : objects) {
      left.insert(o);
      const double now = estimate_remaining_time(ticket, left, map, NodeId("gin"), 90.0);
      ASSERT_GE(now, previous);
      previous = now;
    }
    // Cross-check the walk component against the brute-force optimum.
    if (left.size() <= 6) {
      RouteRequest req{NodeId("gin"), left, RouteMode::Shortest, {}, 0.5};
      double mean = 90.0;
      if (!history.empty()) {
        mean = 0.0;
        for (auto h : history) mean += static_cast<double>(h);
        mean /= static_cast<double>(history.size());
      }
      EXPECT_NEAR(previous, mean * static_cast<double>(left.size()) + oracle::brute_force_route(map, req).cost, 1e-9);
    }
  }
}

TEST(InfoLookup, RequestedLanguage) {
  const auto o = test::make_object("o1", {"en", "fa"});
  const auto r = lookup_object_info(o, "fa", "en");
  EXPECT_EQ(r.record, o.info.at("fa"));
  EXPECT_EQ(r.language, "fa");
  EXPECT_FALSE(r.fallback);
}

TEST(InfoLookup, FallsBackToDefault) {
  const auto o = test::make_object("o1", {"en", "fa"});
  const auto r = lookup_object_info(o, "de", "en");
  EXPECT_EQ(r.record, o.info.at("en"));
  EXPECT_EQ(r.language, "en");
  EXPECT_TRUE(r.fallback);
}

TEST(InfoLookup, NoInfo) {
  const auto o = test::make_object("o1", {});
  EXPECT_EQ(test::code_of([&] { lookup_object_info(o, "fa", "en"); }), ErrorCode::NoInfo);
  const auto only_fa = test::make_object("o2", {"fa"});
  EXPECT_EQ(test::code_of([&] { lookup_object_info(only_fa, "de", "en"); }), ErrorCode::NoInfo);
}

TEST(Survey, FirstSubmissionCarriesVisitedList) {
  auto t = ticket_with_history({30, 40});
  const SurveyResponse response{t.id, {{"q1", 5, std::string("great")}, {"q2", 3, std::nullopt}}};
  const auto body = submit_survey(t, response);
  EXPECT_EQ(body.response, response);
  EXPECT_EQ(body.visited, (std::vector<ObjectId>{ObjectId("seen0"), ObjectId("seen1")}));
}

TEST(Survey, SecondSubmissionIsDuplicate) {
  auto t = ticket_with_history({});
  const SurveyResponse response{t.id, {{"q1", 4, std::nullopt}}};
  t.survey = response;
  EXPECT_EQ(test::code_of([&] { submit_survey(t, response); }), ErrorCode::DuplicateSurvey);
}

TEST(Survey, MalformedResponses) {
  const auto t = ticket_with_history({});
  EXPECT_EQ(test::code_of([&] { submit_survey(t, {t.id, {{"q1", 6, std::nullopt}}}); }), ErrorCode::DomainError);
  EXPECT_EQ(test::code_of([&] { submit_survey(t, {t.id, {{"q1", 3, std::nullopt}, {"q1", 2, std::nullopt}}}); }),
            ErrorCode::DomainError);
  EXPECT_EQ(test::code_of([&] { submit_survey(t, {TicketId("other"), {}}); }), ErrorCode::DomainError);
}

TEST(Survey, VisitedListMatchesInfoReadsInSimulatedLog) {
  test::GridSpec spec;
  spec.visitors = 30;
  spec.seed = 11;
  auto file = test::grid_museum(spec);
  file.scenario.survey_probability = 1.0;
  const auto log = sim::run_scenario(file);
  std::map<TicketId, std::vector<ObjectId>> reads;
  int surveys = 0;
  for (const auto& e : log.events()) {
    if (const auto* r = e.get_if<ObjectInfoRead>()) reads[r->ticket].push_back(r->object);
    if (const auto* s = e.get_if<SurveySubmitted>()) {
      ++surveys;
      EXPECT_EQ(s->visited, reads[s->response.ticket]) << s->response.ticket.str();
    }
    if (const auto* d = e.get_if<Diagnostic>()) ADD_FAILURE() << d->code << ": " << d->detail;
  }
  EXPECT_EQ(surveys, spec.visitors);
}
