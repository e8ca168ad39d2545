#include "museum/reports/reports.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "museum/core/error.hpp"

namespace museum::reports {

using nlohmann::json;

std::string_view report_name(int kind) {
  switch (kind) {
    case 1: return "survey_results";
    case 2: return "visitor_counts";
    case 3: return "most_visited_objects";
    case 4: return "entry_exit_routes";
    case 5: return "object_tracking";
    case 6: return "language_choices";
    case 7: return "visit_durations";
    case 8: return "peak_hours";
    case 9: return "crowd_monitoring";
    case 10: return "environment_status";
    case 11: return "income";
    case 12: return "dependencies";
    case 13: return "visitor_forecast";
    case 14: return "arrangement";
    default: throw Error(ErrorCode::UnknownKind, "report kind " + std::to_string(kind) + " is not in 1..14");
  }
}

namespace {

template <class Fn>
void for_each_in(std::span<const Event> events, const Interval& interval, Fn&& fn) {
  for (const auto& e : events) {
    if (e.timestamp > interval.to) break;
    if (e.timestamp >= interval.from) fn(e);
  }
}

json buckets_skeleton(const Interval& interval, Tick width) {
  json out = json::array();
  for (Tick start = interval.from; start <= interval.to; start += width) {
    out.push_back({{"start", start}, {"end", std::min(start + width - 1, interval.to)}});
  }
  return out;
}

std::size_t bucket_of(const Interval& interval, Tick width, Tick t) {
  return static_cast<std::size_t>((t - interval.from) / width);
}

json survey_results(std::span<const Event> events, const Interval& interval) {
  std::int64_t responses = 0;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> per_question;  // count, rating sum
  json comments = json::array();
  for_each_in(events, interval, [&](const Event& e) {
    const auto* s = e.get_if<SurveySubmitted>();
    if (!s) return;
    ++responses;
    for (const auto& a : s->response.answers) {
      auto& [count, sum] = per_question[a.question_id];
      ++count;
      sum += a.rating;
      if (a.free_text) {
        comments.push_back({{"ticket", s->response.ticket.str()}, {"question", a.question_id}, {"text", *a.free_text}});
      }
    }
  });
  json questions = json::array();
  for (const auto& [q, stats] : per_question) {
    questions.push_back({{"question", q},
                         {"responses", stats.first},
                         {"mean_rating", static_cast<double>(stats.second) / static_cast<double>(stats.first)}});
  }
  return {{"responses", responses}, {"questions", questions}, {"comments", comments}};
}

json visitor_counts(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  std::int64_t entries = 0;
  std::int64_t exits = 0;
  std::int64_t current = 0;
  json buckets = buckets_skeleton(interval, params.bucket_seconds);
  std::vector<std::int64_t> in(buckets.size(), 0);
  std::vector<std::int64_t> out(buckets.size(), 0);
  for (const auto& e : events) {
    if (e.timestamp > interval.to) break;
    const bool inside = e.timestamp >= interval.from;
    if (e.get_if<GateEntry>()) {
      ++current;
      if (inside) {
        ++entries;
        ++in[bucket_of(interval, params.bucket_seconds, e.timestamp)];
      }
    } else if (e.get_if<GateExit>()) {
      --current;
      if (inside) {
        ++exits;
        ++out[bucket_of(interval, params.bucket_seconds, e.timestamp)];
      }
    }
  }
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    buckets[i]["entries"] = in[i];
    buckets[i]["exits"] = out[i];
  }
  return {{"entries", entries}, {"exits", exits}, {"current", current},
          {"bucket_seconds", params.bucket_seconds}, {"buckets", buckets}};
}

json most_visited(std::span<const Event> events, const Interval& interval) {
  std::map<ObjectId, std::int64_t> reads;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* r = e.get_if<ObjectInfoRead>()) ++reads[r->object];
  });
  std::vector<std::pair<ObjectId, std::int64_t>> ranking(reads.begin(), reads.end());
  std::stable_sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  json out = json::array();
  for (const auto& [object, count] : ranking) out.push_back({{"object", object.str()}, {"reads", count}});
  return {{"ranking", out}};
}

json entry_exit_routes(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  json ledger = json::array();
  std::int64_t entries = 0;
  std::int64_t exits = 0;
  std::map<TicketId, std::vector<std::string>> open;
  std::map<std::vector<std::string>, std::int64_t> routes;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* in = e.get_if<GateEntry>()) {
      ++entries;
      ledger.push_back({{"t", e.timestamp}, {"ticket", in->ticket.str()}, {"direction", "entry"}, {"gate", in->gate.str()}});
      open[in->ticket] = {in->gate.str()};
    } else if (const auto* out = e.get_if<GateExit>()) {
      ++exits;
      ledger.push_back({{"t", e.timestamp}, {"ticket", out->ticket.str()}, {"direction", "exit"}, {"gate", out->gate.str()}});
      if (auto it = open.find(out->ticket); it != open.end()) {
        it->second.push_back(out->gate.str());
        ++routes[it->second];
        open.erase(it);
      }
    } else if (const auto* read = e.get_if<ObjectInfoRead>()) {
      if (auto it = open.find(read->ticket); it != open.end()) it->second.push_back(read->node.str());
    }
  });
  std::vector<std::pair<std::vector<std::string>, std::int64_t>> ranked(routes.begin(), routes.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > params.top_k_routes) ranked.resize(params.top_k_routes);
  json top = json::array();
  for (const auto& [route, count] : ranked) top.push_back({{"route", route}, {"tickets", count}});
  return {{"ledger", ledger}, {"entries", entries}, {"exits", exits},
          {"top_k", params.top_k_routes}, {"routes", top}};
}

json object_tracking(std::span<const Event> events, const Interval& interval) {
  std::map<ObjectId, json> timelines;
  std::map<ObjectId, std::int64_t> alarms;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* fix = e.get_if<LocationFix>()) {
      if (const auto* id = std::get_if<ObjectId>(&fix->subject)) {
        auto& timeline = timelines[*id];
        if (timeline.is_null()) timeline = json::array();
        timeline.push_back({{"t", e.timestamp}, {"r", fix->fix.r()}, {"theta", fix->fix.theta()}});
      }
    } else if (const auto* a = e.get_if<AlarmRaised>()) {
      if (a->alarm.kind == AlarmKind::LocationChange) ++alarms[a->alarm.subject];
    }
  });
  std::set<ObjectId> ids;
  for (const auto& [id, t] : timelines) ids.insert(id);
  for (const auto& [id, n] : alarms) ids.insert(id);
  json out = json::array();
  for (const auto& id : ids) {
    json timeline = timelines.contains(id) ? timelines[id] : json::array();
    const auto fixes = timeline.size();
    out.push_back({{"object", id.str()}, {"fixes", fixes}, {"timeline", std::move(timeline)},
                   {"location_alarms", alarms.contains(id) ? alarms[id] : 0}});
  }
  return {{"objects", out}};
}

json language_choices(std::span<const Event> events, const Interval& interval) {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* l = e.get_if<LanguageChosen>()) {
      ++counts[l->language];
      ++total;
    }
  });
  std::vector<std::pair<std::string, std::int64_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  json out = json::array();
  for (const auto& [language, count] : ranked) out.push_back({{"language", language}, {"count", count}});
  return {{"total", total}, {"languages", out}};
}

json visit_durations(std::span<const Event> events, const Interval& interval) {
  std::map<TicketId, std::pair<std::optional<Tick>, std::optional<Tick>>> times;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* in = e.get_if<GateEntry>()) {
      auto& entry = times[in->ticket].first;
      if (!entry) entry = e.timestamp;
    } else if (const auto* out = e.get_if<GateExit>()) {
      times[out->ticket].second = e.timestamp;
    }
  });
  json tickets = json::array();
  std::int64_t completed = 0;
  double total = 0.0;
  for (const auto& [id, span] : times) {
    const auto& [entry, exit] = span;
    json row{{"ticket", id.str()}, {"entry", nullptr}, {"exit", nullptr}, {"duration", nullptr}};
    if (entry) row["entry"] = *entry;
    if (exit) row["exit"] = *exit;
    if (entry && exit && *exit >= *entry) {
      row["duration"] = *exit - *entry;
      ++completed;
      total += static_cast<double>(*exit - *entry);
    }
    tickets.push_back(std::move(row));
  }
  const double average = completed ? total / static_cast<double>(completed) : 0.0;
  return {{"tickets", tickets}, {"completed", completed}, {"average_duration", average}};
}

json peak_hours(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  std::map<std::pair<Tick, Tick>, std::int64_t> cells;
  for_each_in(events, interval, [&](const Event& e) {
    if (e.get_if<GateEntry>()) {
      ++cells[{e.timestamp / params.day_seconds, (e.timestamp % params.day_seconds) / 3600}];
    }
  });
  json out = json::array();
  json peak = nullptr;
  std::int64_t peak_count = 0;
  for (const auto& [cell, count] : cells) {
    out.push_back({{"day", cell.first}, {"hour", cell.second}, {"entries", count}});
    if (count > peak_count) {
      peak_count = count;
      peak = {{"day", cell.first}, {"hour", cell.second}, {"entries", count}};
    }
  }
  return {{"day_seconds", params.day_seconds}, {"cells", out}, {"peak", peak}};
}

json crowd_monitoring(std::span<const Event> events, const Interval& interval) {
  struct Series {
    NodeId node;
    std::int64_t level = 0;
    std::int64_t max = 0;
    double area = 0.0;   // sum of per-second levels inside the interval
    Tick since = 0;      // start of the current constant stretch, clipped to the interval
  };
  std::map<ObjectId, Series> series;
  std::map<TicketId, ObjectId> at;

  auto close_stretch = [&interval](Series& s, Tick until) {  // level held on [since, until)
    const Tick lo = std::max(s.since, interval.from);
    const Tick hi = std::min(until, interval.to + 1);
    if (hi > lo) {
      s.area += static_cast<double>(s.level) * static_cast<double>(hi - lo);
      s.max = std::max(s.max, s.level);
    }
    s.since = until;
  };
  auto change = [&](const ObjectId& object, Tick t, std::int64_t delta) {
    auto& s = series[object];
    close_stretch(s, t);
    s.level += delta;
  };

  for (const auto& e : events) {
    if (e.timestamp > interval.to) break;
    if (const auto* read = e.get_if<ObjectInfoRead>()) {
      if (!series.contains(read->object)) series[read->object] = Series{read->node, 0, 0, 0.0, e.timestamp};
      change(read->object, e.timestamp, +1);
      at[read->ticket] = read->object;
    } else if (const auto* end = e.get_if<VisitEnded>()) {
      if (at.erase(end->ticket)) change(end->object, e.timestamp, -1);
    } else if (const auto* out = e.get_if<GateExit>()) {
      if (auto it = at.find(out->ticket); it != at.end()) {
        change(it->second, e.timestamp, -1);
        at.erase(it);
      }
    }
  }

  const double ticks = static_cast<double>(interval.to - interval.from + 1);
  std::map<NodeId, json> rows;
  for (auto& [object, s] : series) {
    close_stretch(s, interval.to + 1);
    rows[s.node] = {{"node", s.node.str()}, {"object", object.str()}, {"max", s.max}, {"mean", s.area / ticks}};
  }
  json out = json::array();
  for (auto& [node, row] : rows) out.push_back(std::move(row));
  return {{"nodes", out}};
}

json environment_status(std::span<const Event> events, const Interval& interval) {
  struct Stats {
    std::int64_t readings = 0;
    std::int64_t mechanical = 0;
    std::int64_t alarms = 0;
    std::array<double, kSensorChannels> min{}, max{}, sum{};
  };
  std::map<ObjectId, Stats> stats;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* t = e.get_if<SensorTelemetry>()) {
      auto& s = stats[t->reading.object];
      for (std::size_t c = 0; c < kSensorChannels; ++c) {
        const double v = t->reading.values[c];
        s.min[c] = s.readings ? std::min(s.min[c], v) : v;
        s.max[c] = s.readings ? std::max(s.max[c], v) : v;
        s.sum[c] += v;
      }
      ++s.readings;
      if (t->reading.mechanical_event) ++s.mechanical;
    } else if (const auto* a = e.get_if<AlarmRaised>()) {
      if (a->alarm.kind == AlarmKind::Environmental) ++stats[a->alarm.subject].alarms;
    }
  });
  json out = json::array();
  for (const auto& [id, s] : stats) {
    json channels = json::array();
    for (std::size_t c = 0; c < kSensorChannels && s.readings > 0; ++c) {
      channels.push_back({{"channel", to_string(static_cast<Channel>(c))},
                          {"min", s.min[c]},
                          {"max", s.max[c]},
                          {"mean", s.sum[c] / static_cast<double>(s.readings)}});
    }
    out.push_back({{"object", id.str()}, {"readings", s.readings}, {"mechanical_events", s.mechanical},
                   {"alarms", s.alarms}, {"channels", channels}});
  }
  return {{"objects", out}};
}

json income(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  json buckets = buckets_skeleton(interval, params.bucket_seconds);
  std::vector<double> amount(buckets.size(), 0.0);
  std::vector<std::int64_t> count(buckets.size(), 0);
  double total = 0.0;
  std::int64_t payments = 0;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* p = e.get_if<PaymentReceived>()) {
      total += p->amount;
      ++payments;
      const auto b = bucket_of(interval, params.bucket_seconds, e.timestamp);
      amount[b] += p->amount;
      ++count[b];
    }
  });
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    buckets[i]["amount"] = amount[i];
    buckets[i]["payments"] = count[i];
  }
  return {{"total", total}, {"payments", payments}, {"bucket_seconds", params.bucket_seconds}, {"buckets", buckets}};
}

json dependency_json(const std::vector<Dependency>& deps) {
  json out = json::array();
  for (const auto& d : deps) {
    out.push_back({{"a", d.a.str()}, {"b", d.b.str()}, {"support", d.support}, {"lift", d.lift}});
  }
  return out;
}

std::int64_t ticket_universe(std::span<const Event> events, const Interval& interval) {
  std::set<TicketId> tickets;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* r = e.get_if<ObjectInfoRead>()) tickets.insert(r->ticket);
  });
  return static_cast<std::int64_t>(tickets.size());
}

json dependencies(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  return {{"min_support", params.min_support},
          {"tickets", ticket_universe(events, interval)},
          {"pairs", dependency_json(find_dependencies(events, interval, params.min_support))}};
}

json visitor_forecast(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  const Tick days = interval.from / params.day_seconds;
  std::vector<double> history(static_cast<std::size_t>(days), 0.0);
  for (const auto& e : events) {
    if (e.timestamp >= days * params.day_seconds) break;
    if (e.get_if<GateEntry>()) history[static_cast<std::size_t>(e.timestamp / params.day_seconds)] += 1.0;
  }
  json forecast = json::array();
  if (!history.empty()) forecast = forecast_visitors(history, params.forecast_horizon);
  return {{"day_seconds", params.day_seconds}, {"history", history},
          {"horizon", params.forecast_horizon}, {"forecast", forecast}};
}

json ids_json(const std::vector<ObjectId>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

json arrangement(std::span<const Event> events, const Interval& interval, const ReportParams& params) {
  std::set<ObjectId> objects;
  for_each_in(events, interval, [&](const Event& e) {
    if (const auto* r = e.get_if<ObjectInfoRead>()) objects.insert(r->object);
  });
  const auto deps = find_dependencies(events, interval, params.min_support);
  const std::vector<ObjectId> pool(objects.begin(), objects.end());
  const auto greedy = suggest_arrangement(pool, deps);
  json exhaustive = nullptr;
  if (pool.size() <= params.exhaustive_arrangement_limit) {
    const auto best = exhaustive_arrangement(pool, deps);
    exhaustive = {{"order", ids_json(best.order)}, {"score", best.score}};
  }
  return {{"order", ids_json(greedy.order)}, {"score", greedy.score}, {"exhaustive", exhaustive}};
}

}  // namespace

Report generate_report(std::span<const Event> events, int kind, const Interval& interval,
                       const ReportParams& params) {
  if (kind < kMinReportKind || kind > kMaxReportKind) {
    throw Error(ErrorCode::UnknownKind, "report kind " + std::to_string(kind) + " outside 1..14");
  }
  if (interval.from > interval.to || interval.from < 0) {
    throw Error(ErrorCode::DomainError, "report interval must satisfy 0 <= from <= to");
  }
  if (params.bucket_seconds <= 0 || params.day_seconds <= 0) {
    throw Error(ErrorCode::DomainError, "bucket and day lengths must be positive");
  }
  if (params.min_support < 1) throw Error(ErrorCode::DomainError, "min_support must be >= 1");
  if (params.forecast_horizon < 1) throw Error(ErrorCode::DomainError, "forecast horizon must be >= 1");

  Report report{kind, interval, nullptr};
  switch (kind) {
    case 1: report.payload = survey_results(events, interval); break;
    case 2: report.payload = visitor_counts(events, interval, params); break;
    case 3: report.payload = most_visited(events, interval); break;
    case 4: report.payload = entry_exit_routes(events, interval, params); break;
    case 5: report.payload = object_tracking(events, interval); break;
    case 6: report.payload = language_choices(events, interval); break;
    case 7: report.payload = visit_durations(events, interval); break;
    case 8: report.payload = peak_hours(events, interval, params); break;
    case 9: report.payload = crowd_monitoring(events, interval); break;
    case 10: report.payload = environment_status(events, interval); break;
    case 11: report.payload = income(events, interval, params); break;
    case 12: report.payload = dependencies(events, interval, params); break;
    case 13: report.payload = visitor_forecast(events, interval, params); break;
    case 14: report.payload = arrangement(events, interval, params); break;
  }
  return report;
}

// ---- Output ---------------------------------------------------------------

json Report::to_json() const {
  return {{"schema_version", kReportSchemaVersion},
          {"kind", kind},
          {"name", report_name(kind)},
          {"interval", {{"from", interval.from}, {"to", interval.to}}},
          {"payload", payload}};
}

namespace {

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (!v.is_string()) return v.dump();
  const auto s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void csv_row(std::ostringstream& out, std::initializer_list<json> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << csv_cell(c);
    first = false;
  }
  out << '\n';
}

std::string join_route(const json& route) {
  std::string s;
  for (const auto& node : route) {
    if (!s.empty()) s += '>';
    s += node.get<std::string>();
  }
  return s;
}

}  // namespace

std::string Report::to_csv() const {
  std::ostringstream out;
  const json& p = payload;
  switch (kind) {
    case 1:
      csv_row(out, {"question", "responses", "mean_rating"});
      for (const auto& q : p["questions"]) csv_row(out, {q["question"], q["responses"], q["mean_rating"]});
      break;
    case 2:
    case 11: {
      const bool money = kind == 11;
      if (money) csv_row(out, {"start", "end", "payments", "amount"});
      else csv_row(out, {"start", "end", "entries", "exits"});
      for (const auto& b : p["buckets"]) {
        if (money) csv_row(out, {b["start"], b["end"], b["payments"], b["amount"]});
        else csv_row(out, {b["start"], b["end"], b["entries"], b["exits"]});
      }
      break;
    }
    case 3:
      csv_row(out, {"object", "reads"});
      for (const auto& r : p["ranking"]) csv_row(out, {r["object"], r["reads"]});
      break;
    case 4: {
      csv_row(out, {"rank", "tickets", "route"});
      int rank = 0;
      for (const auto& r : p["routes"]) csv_row(out, {++rank, r["tickets"], join_route(r["route"])});
      break;
    }
    case 5:
      csv_row(out, {"object", "t", "r", "theta"});
      for (const auto& o : p["objects"]) {
        for (const auto& f : o["timeline"]) csv_row(out, {o["object"], f["t"], f["r"], f["theta"]});
      }
      break;
    case 6:
      csv_row(out, {"language", "count"});
      for (const auto& l : p["languages"]) csv_row(out, {l["language"], l["count"]});
      break;
    case 7:
      csv_row(out, {"ticket", "entry", "exit", "duration"});
      for (const auto& t : p["tickets"]) csv_row(out, {t["ticket"], t["entry"], t["exit"], t["duration"]});
      break;
    case 8:
      csv_row(out, {"day", "hour", "entries"});
      for (const auto& c : p["cells"]) csv_row(out, {c["day"], c["hour"], c["entries"]});
      break;
    case 9:
      csv_row(out, {"node", "object", "max", "mean"});
      for (const auto& n : p["nodes"]) csv_row(out, {n["node"], n["object"], n["max"], n["mean"]});
      break;
    case 10:
      csv_row(out, {"object", "channel", "min", "max", "mean", "readings", "alarms"});
      for (const auto& o : p["objects"]) {
        for (const auto& c : o["channels"]) {
          csv_row(out, {o["object"], c["channel"], c["min"], c["max"], c["mean"], o["readings"], o["alarms"]});
        }
      }
      break;
    case 12:
      csv_row(out, {"a", "b", "support", "lift"});
      for (const auto& d : p["pairs"]) csv_row(out, {d["a"], d["b"], d["support"], d["lift"]});
      break;
    case 13: {
      csv_row(out, {"day", "series", "visitors"});
      std::int64_t day = 0;
      for (const auto& h : p["history"]) csv_row(out, {day++, "history", h});
      for (const auto& f : p["forecast"]) csv_row(out, {day++, "forecast", f});
      break;
    }
    case 14: {
      csv_row(out, {"position", "object"});
      int position = 0;
      for (const auto& o : p["order"]) csv_row(out, {position++, o});
      break;
    }
    default:
      break;
  }
  return out.str();
}

}  // namespace museum::reports
