#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "museum/core/event.hpp"
#include "museum/core/ids.hpp"
#include "museum/core/map.hpp"

namespace museum::reports {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kMinReportKind = 1;
inline constexpr int kMaxReportKind = 14;

/// Closed interval of simulated seconds.
struct Interval {
  Tick from = 0;
  Tick to = 0;

  bool contains(Tick t) const noexcept { return t >= from && t <= to; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ReportParams {
  std::size_t top_k_routes = 10;
  Tick bucket_seconds = 3600;      // histograms of kinds 2 and 11
  std::int64_t min_support = 1;    // kind 12
  Tick day_seconds = 86400;        // kinds 8 and 13
  int forecast_horizon = 3;        // kind 13
  std::size_t exhaustive_arrangement_limit = 6;  // kind 14
};

struct Report {
  int kind = 0;
  Interval interval;
  nlohmann::json payload;

  nlohmann::json to_json() const;
  /// Main table of the report as CSV, header row first.
  std::string to_csv() const;
};

/// Throws UnknownKind outside 1..14.
std::string_view report_name(int kind);

/// Pure function of (events, kind, interval, params). An empty log yields
/// zero-valued payloads. Throws UnknownKind for kinds outside 1..14 and
/// DomainError for an inverted interval.
Report generate_report(std::span<const Event> events, int kind, const Interval& interval,
                       const ReportParams& params = {});

/// Ordinary least-squares trend over day index, clamped at 0. Fewer than three
/// days of history forecast the historical mean.
std::vector<double> forecast_visitors(std::span<const double> history, int horizon);

struct Dependency {
  ObjectId a;  // a < b
  ObjectId b;
  std::int64_t support = 0;
  double lift = 0.0;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// Co-visit pairs over tickets that read at least one object tag in the
/// interval; sorted by lift descending, then by (a, b).
std::vector<Dependency> find_dependencies(std::span<const Event> events, const Interval& interval,
                                          std::int64_t min_support);

struct Arrangement {
  std::vector<ObjectId> order;
  double score = 0.0;  // sum of lift over adjacent pairs

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

/// Sum of lift over consecutive objects in `order`; pairs without a
/// dependency contribute 0.
double arrangement_score(const std::vector<ObjectId>& order, std::span<const Dependency> dependencies);

/// Greedy chain: seed with the highest-lift pair, then repeatedly attach the
/// object with the largest lift to either end. Objects with no link are
/// appended in id order.
Arrangement suggest_arrangement(std::vector<ObjectId> objects, std::span<const Dependency> dependencies);
Arrangement suggest_arrangement(const MuseumMap& map, std::span<const Dependency> dependencies);

/// Best order by enumerating every permutation; for small object sets only.
Arrangement exhaustive_arrangement(std::vector<ObjectId> objects, std::span<const Dependency> dependencies);

}  // namespace museum::reports
