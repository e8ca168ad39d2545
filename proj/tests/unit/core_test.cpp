#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "museum/core/error.hpp"
#include "museum/core/map.hpp"
#include "museum/core/message.hpp"
#include "museum/core/types.hpp"

using namespace museum;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::DomainError;
}

bool has_violation(const std::vector<MapViolation>& vs, const std::string& code) {
  for (const auto& v : vs) {
    if (v.code == code) return true;
  }
  return false;
}

MuseumMap four_node_map() {
  return MuseumMap({{NodeId("in"), NodeKind::EntryGate, {0, 0}, std::nullopt},
                    {NodeId("a"), NodeKind::Exhibit, {1, 0}, ObjectId("o1")},
                    {NodeId("b"), NodeKind::Exhibit, {2, 0}, ObjectId("o2")},
                    {NodeId("out"), NodeKind::ExitGate, {3, 0}, std::nullopt}},
                   {{NodeId("in"), NodeId("a"), 5}, {NodeId("a"), NodeId("b"), 5}, {NodeId("b"), NodeId("out"), 5}});
}

}  // namespace

TEST(ClassifyLink, Examples) {
  EXPECT_EQ(classify_link(3), Link::RF);
  EXPECT_EQ(classify_link(12), Link::WiFi);
  EXPECT_EQ(code_of([] { classify_link(13); }), ErrorCode::Unclassified);
}

TEST(ClassifyLink, PartitionsOneToTwelve) {
  const std::set<int> rf{3, 4, 6, 8, 9, 10, 11};
  const std::set<int> wifi{1, 2, 5, 7, 12};
  for (int k = 1; k <= 12; ++k) {
    EXPECT_EQ(classify_link(k), rf.contains(k) ? Link::RF : Link::WiFi) << k;
    EXPECT_NE(rf.contains(k), wifi.contains(k)) << k;
    EXPECT_EQ(is_server_bound(k), wifi.contains(k)) << k;
  }
}

TEST(ClassifyLink, OutsideRangeIsDomainError) {
  EXPECT_EQ(code_of([] { classify_link(0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { classify_link(14); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { classify_link(-3); }), ErrorCode::DomainError);
}

TEST(MessageTest, LinkFollowsKind) {
  for (int k = 1; k <= 12; ++k) {
    const Message m(k, 7, test::sample_payload(k));
    EXPECT_EQ(m.link(), classify_link(k));
    EXPECT_EQ(m.timestamp(), 7);
  }
}

TEST(MessageTest, WrongLinkRejected) {
  for (int k = 1; k <= 12; ++k) {
    const Link wrong = classify_link(k) == Link::RF ? Link::WiFi : Link::RF;
    EXPECT_EQ(code_of([&] { Message(k, wrong, 0, test::sample_payload(k)); }), ErrorCode::InvalidMessage) << k;
    EXPECT_NO_THROW(Message(k, classify_link(k), 0, test::sample_payload(k)));
  }
}

TEST(MessageTest, PayloadMustFitKind) {
  EXPECT_EQ(code_of([] { Message(12, 0, test::sample_payload(1)); }), ErrorCode::InvalidMessage);
  EXPECT_EQ(code_of([] { Message(2, 0, test::sample_payload(3)); }), ErrorCode::InvalidMessage);
  // 6 and 8 carry object tags, 9 and 11 ticket tags.
  EXPECT_EQ(code_of([] { Message(6, 0, test::sample_payload(9)); }), ErrorCode::InvalidMessage);
  EXPECT_EQ(code_of([] { Message(11, 0, test::sample_payload(8)); }), ErrorCode::InvalidMessage);
}

TEST(MessageTest, KindThirteenAndNegativeTime) {
  EXPECT_EQ(code_of([] { Message(13, 0, test::sample_payload(1)); }), ErrorCode::Unclassified);
  EXPECT_EQ(code_of([] { Message(0, 0, test::sample_payload(1)); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { Message(1, -1, test::sample_payload(1)); }), ErrorCode::InvalidMessage);
}

TEST(PolarCoordTest, CanonicalForm) {
  EXPECT_EQ(PolarCoord::make(0.0, 2.5), PolarCoord::make(0.0, 0.0));
  EXPECT_EQ(PolarCoord::make(0.0, 2.5).theta(), 0.0);
  const auto p = PolarCoord::make(1.0, -std::numbers::pi);
  EXPECT_DOUBLE_EQ(p.theta(), std::numbers::pi);
  EXPECT_NEAR(PolarCoord::make(2.0, 3.0 * std::numbers::pi).theta(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(PolarCoord::make(2.0, 2.0 * std::numbers::pi + 0.25).theta(), 0.25, 1e-12);
  EXPECT_EQ(code_of([] { PolarCoord::make(-1.0, 0.0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { PolarCoord::make(NAN, 0.0); }), ErrorCode::DomainError);
}

TEST(PolarCoordTest, ThetaAlwaysInHalfOpenRange) {
  for (double t = -20.0; t <= 20.0; t += 0.0173) {
    const auto p = PolarCoord::make(1.0, t);
    EXPECT_GT(p.theta(), -std::numbers::pi);
    EXPECT_LE(p.theta(), std::numbers::pi);
    EXPECT_NEAR(std::cos(p.theta()), std::cos(t), 1e-9);
    EXPECT_NEAR(std::sin(p.theta()), std::sin(t), 1e-9);
  }
}

TEST(ChannelTest, NamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(Channel::Mechanical); ++i) {
    const auto c = static_cast<Channel>(i);
    EXPECT_EQ(channel_from_string(to_string(c)), c);
  }
  EXPECT_FALSE(channel_from_string("radiation"));
}

TEST(SurveyResponseTest, Validation) {
  SurveyResponse ok{TicketId("t1"), {{"q1", 5, std::nullopt}, {"q2", 1, std::string("fine")}}};
  EXPECT_NO_THROW(ok.validate());
  SurveyResponse dup{TicketId("t1"), {{"q1", 3, std::nullopt}, {"q1", 4, std::nullopt}}};
  EXPECT_EQ(code_of([&] { dup.validate(); }), ErrorCode::DomainError);
  SurveyResponse range{TicketId("t1"), {{"q1", 6, std::nullopt}}};
  EXPECT_EQ(code_of([&] { range.validate(); }), ErrorCode::DomainError);
}

TEST(ValidateMap, MissingExitGate) {
  MuseumMap m({{NodeId("in"), NodeKind::EntryGate, {0, 0}, std::nullopt},
               {NodeId("a"), NodeKind::Exhibit, {1, 0}, ObjectId("o1")}},
              {{NodeId("in"), NodeId("a"), 3}});
  const auto v = validate_map(m);
  EXPECT_TRUE(has_violation(v, "missing exit gate"));
  EXPECT_FALSE(has_violation(v, "missing entry gate"));
}

TEST(ValidateMap, ConnectedFourNodeMapIsValid) { EXPECT_TRUE(validate_map(four_node_map()).empty()); }

TEST(ValidateMap, NonPositiveWalkTime) {
  MuseumMap m({{NodeId("in"), NodeKind::EntryGate, {0, 0}, std::nullopt},
               {NodeId("out"), NodeKind::ExitGate, {1, 0}, std::nullopt}},
              {{NodeId("in"), NodeId("out"), 0}});
  EXPECT_TRUE(has_violation(validate_map(m), "non-positive walk_time"));
}

TEST(ValidateMap, ReportsEveryViolation) {
  MuseumMap m({{NodeId("in"), NodeKind::EntryGate, {0, 0}, std::nullopt},
               {NodeId("a"), NodeKind::Exhibit, {1, 0}, std::nullopt},
               {NodeId("b"), NodeKind::Exhibit, {2, 0}, ObjectId("o1")},
               {NodeId("c"), NodeKind::Exhibit, {3, 0}, ObjectId("o1")},
               {NodeId("in"), NodeKind::Exhibit, {4, 0}, ObjectId("o9")}},
              {{NodeId("in"), NodeId("a"), -2}, {NodeId("a"), NodeId("zz"), 4}, {NodeId("b"), NodeId("b"), 1}});
  const auto v = validate_map(m);
  EXPECT_TRUE(has_violation(v, "missing exit gate"));
  EXPECT_TRUE(has_violation(v, "non-positive walk_time"));
  EXPECT_TRUE(has_violation(v, "unknown edge endpoint"));
  EXPECT_TRUE(has_violation(v, "self loop"));
  EXPECT_TRUE(has_violation(v, "duplicate node id"));
  EXPECT_TRUE(has_violation(v, "duplicate object reference"));
  EXPECT_TRUE(has_violation(v, "disconnected graph"));
}

TEST(ValidateMap, DanglingObjectReference) {
  std::map<ObjectId, ExhibitObject> objects{{ObjectId("o1"), test::make_object("o1")}};
  const auto v = validate_map(four_node_map(), objects);
  EXPECT_TRUE(has_violation(v, "dangling object reference"));
  objects.emplace(ObjectId("o2"), test::make_object("o2"));
  EXPECT_TRUE(validate_map(four_node_map(), objects).empty());
  objects.emplace(ObjectId("o3"), test::make_object("o3"));
  EXPECT_TRUE(has_violation(validate_map(four_node_map(), objects), "object without exhibit node"));
}

TEST(ValidateMap, EmptyMap) { EXPECT_TRUE(has_violation(validate_map(MuseumMap()), "empty map")); }

TEST(MuseumMapTest, Lookups) {
  const auto m = four_node_map();
  EXPECT_EQ(m.index_of(NodeId("b")), 2u);
  EXPECT_EQ(m.node_of_object(ObjectId("o2")), 2u);
  EXPECT_FALSE(m.node_of_object(ObjectId("nope")));
  EXPECT_EQ(code_of([&] { m.index_of(NodeId("zz")); }), ErrorCode::UnknownSubject);
  EXPECT_EQ(m.neighbors(1).size(), 2u);
  EXPECT_EQ(m.object_ids(), (std::vector<ObjectId>{ObjectId("o1"), ObjectId("o2")}));
}
