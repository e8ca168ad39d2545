#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "museum/core/error.hpp"
#include "museum/core/json_codec.hpp"
#include "museum/server/event_log.hpp"

using namespace museum;

namespace {

std::vector<EventBody> one_of_each() {
  SensorReading reading{ObjectId("o1"), 30, {20.5, 101.0, 55.0, 150.0, 7.0, 10.0}, true};
  SurveyResponse survey{TicketId("t1"), {{"q1", 4, std::nullopt}, {"q2", 2, std::string("too \"busy\"")}}};
  return {
      TicketIssued{TicketId("t1"), TagId("tag-t1")},
      PaymentReceived{TicketId("t1"), 12.5},
      LanguageChosen{TicketId("t1"), "fa"},
      GateEntry{TicketId("t1"), ReaderId("in"), "fa"},
      TagSensedAtGate{HybridTag{TagId("tag-o1"), false, TagKind::Object}, ReaderId("out"), ObjectId("o1")},
      ObjectInfoRead{TicketId("t1"), ObjectId("o1"), NodeId("n1"), "en", true},
      VisitEnded{TicketId("t1"), ObjectId("o1"), 93},
      LocationFix{ObjectId("o1"), PolarCoord::make(5.25, -1.5), ReaderId("cr")},
      LocationFix{TicketId("t1"), PolarCoord::make(0.0, 0.0), ReaderId("cr")},
      SensorTelemetry{reading},
      SurveySubmitted{survey, {ObjectId("o1"), ObjectId("o2")}},
      AlarmRaised{Alarm{AlarmKind::TheftAtGate, ObjectId("o1"), GateDetail{ReaderId("out")}, 40}},
      AlarmRaised{Alarm{AlarmKind::LocationChange, ObjectId("o1"), DisplacementDetail{10.0}, 40}},
      AlarmRaised{Alarm{AlarmKind::Environmental, ObjectId("o1"),
                        EnvironmentDetail{Channel::Temperature, 35.0, BoundSide::Max, 30.0}, 40}},
      AlarmRaised{Alarm{AlarmKind::Environmental, ObjectId("o1"),
                        EnvironmentDetail{Channel::Mechanical, 1.0, BoundSide::Forbidden, 0.0}, 40}},
      GateExit{TicketId("t1"), ReaderId("out")},
      TicketReturned{TicketId("t1")},
      Diagnostic{"StaleMessage", "message at 3 is older than watermark 40"},
  };
}

}  // namespace

TEST(EventLogTest, SeqIsGaplessFromOne) {
  EventLog log;
  Tick t = 0;
  for (auto& body : one_of_each()) log.append(t++, body);
  ASSERT_EQ(log.size(), one_of_each().size());
  for (std::size_t i = 0; i < log.size(); ++i) EXPECT_EQ(log.events()[i].seq, static_cast<std::int64_t>(i + 1));
  EXPECT_EQ(log.last_timestamp(), t - 1);
}

TEST(EventLogTest, TimestampsMayRepeatButNotDecrease) {
  EventLog log;
  log.append(5, TicketIssued{TicketId("a"), TagId("ta")});
  EXPECT_NO_THROW(log.append(5, TicketIssued{TicketId("b"), TagId("tb")}));
  EXPECT_THROW(log.append(4, TicketIssued{TicketId("c"), TagId("tc")}), Error);
  EXPECT_EQ(log.size(), 2u);
}

TEST(EventCodec, EveryBodyRoundTrips) {
  std::int64_t seq = 1;
  for (const auto& body : one_of_each()) {
    const Event e{seq++, 17, body};
    const auto j = to_json(e);
    EXPECT_EQ(j.at("kind").get<std::string>(), event_kind_name(body));
    EXPECT_EQ(event_from_json(j), e) << j.dump();
    EXPECT_EQ(event_from_json(nlohmann::json::parse(j.dump())), e) << j.dump();
  }
}

TEST(EventCodec, RejectsUnknownFieldsAndKinds) {
  auto j = to_json(Event{1, 0, PaymentReceived{TicketId("t1"), 1.0}});
  j["payload"]["extra"] = 1;
  EXPECT_THROW(event_from_json(j), Error);
  j = to_json(Event{1, 0, PaymentReceived{TicketId("t1"), 1.0}});
  j["kind"] = "Teleported";
  EXPECT_THROW(event_from_json(j), Error);
  j = to_json(Event{1, 0, PaymentReceived{TicketId("t1"), 1.0}});
  j.erase("seq");
  EXPECT_THROW(event_from_json(j), Error);
}

TEST(EventLogTest, NdjsonRoundTrip) {
  EventLog log;
  Tick t = 0;
  for (auto& body : one_of_each()) log.append(t += 3, body);
  std::stringstream buffer;
  log.write_ndjson(buffer);
  const auto text = buffer.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), log.size());
  const auto back = EventLog::read_ndjson(buffer);
  EXPECT_EQ(back, log);
  std::stringstream again;
  back.write_ndjson(again);
  EXPECT_EQ(again.str(), text);
}

TEST(EventLogTest, ReadRejectsBrokenLogs) {
  auto read = [](const std::string& text) {
    std::stringstream in(text);
    try {
      EventLog::read_ndjson(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DomainError;
  };
  const std::string a = R"({"kind":"TicketReturned","payload":{"ticket":"t1"},"seq":1,"t":5})";
  const std::string gap = R"({"kind":"TicketReturned","payload":{"ticket":"t1"},"seq":3,"t":6})";
  const std::string older = R"({"kind":"TicketReturned","payload":{"ticket":"t1"},"seq":2,"t":4})";
  EXPECT_EQ(read(a + "\n" + gap + "\n"), ErrorCode::LogFormat);
  EXPECT_EQ(read(a + "\n" + older + "\n"), ErrorCode::LogFormat);
  EXPECT_EQ(read("not json\n"), ErrorCode::LogFormat);
  std::stringstream ok(a + "\n\n");
  EXPECT_EQ(EventLog::read_ndjson(ok).size(), 1u);
}

TEST(EventLogTest, CopiesAreIndependent) {
  EventLog log;
  log.append(1, TicketIssued{TicketId("a"), TagId("ta")});
  EventLog copy = log;
  copy.append(2, TicketIssued{TicketId("b"), TagId("tb")});
  EXPECT_EQ(log.size(), 1u);
  EXPECT_EQ(copy.size(), 2u);
  EXPECT_EQ(log.snapshot().size(), 1u);
}
