#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "museum/core/ids.hpp"

namespace museum {

/// Simulated seconds since the start of a run.
using Tick = std::int64_t;

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);

/// Polar coordinate relative to some origin, always kept in canonical form:
/// r >= 0, theta in (-pi, pi], and theta == 0 whenever r == 0.
class PolarCoord {
 public:
  PolarCoord() = default;

  /// Normalizes theta into (-pi, pi]. Throws DomainError for negative or
  /// non-finite input.
  static PolarCoord make(double r, double theta);

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }

  friend bool operator==(const PolarCoord&, const PolarCoord&) = default;

 private:
  PolarCoord(double r, double theta) : r_(r), theta_(theta) {}

  double r_ = 0.0;
  double theta_ = 0.0;
};

enum class TagKind { Object, Ticket };

/// Active-passive tag. Charged tags answer out to a reader's active range,
/// depleted ones still answer passively within the passive range.
struct HybridTag {
  TagId id;
  bool battery_charged = true;
  TagKind kind = TagKind::Object;

  friend bool operator==(const HybridTag&, const HybridTag&) = default;
};

enum class Channel { Temperature, Pressure, Humidity, Light, Ph, Gas, Mechanical };

inline constexpr std::size_t kSensorChannels = 6;

std::string_view to_string(Channel channel);
std::optional<Channel> channel_from_string(std::string_view name);

struct Bounds {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v) const noexcept { return v >= min && v <= max; }
  double midpoint() const noexcept { return 0.5 * (min + max); }

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct EnvThresholds {
  // Indexed by Channel for the six numeric channels.
  std::array<Bounds, kSensorChannels> bounds{};
  bool mechanical_events_allowed = false;

  const Bounds& operator[](Channel c) const { return bounds.at(static_cast<std::size_t>(c)); }
  Bounds& operator[](Channel c) { return bounds.at(static_cast<std::size_t>(c)); }

  friend bool operator==(const EnvThresholds&, const EnvThresholds&) = default;
};

struct SensorReading {
  ObjectId object;
  Tick timestamp = 0;
  std::array<double, kSensorChannels> values{};
  bool mechanical_event = false;

  double operator[](Channel c) const { return values.at(static_cast<std::size_t>(c)); }

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

/// Opaque per-language content (audio/visual/text is not rendered here).
struct InfoRecord {
  std::string content;

  friend bool operator==(const InfoRecord&, const InfoRecord&) = default;
};

struct ExhibitObject {
  ObjectId id;
  HybridTag tag;
  PolarCoord home_polar;
  std::map<std::string, InfoRecord> info;
  EnvThresholds thresholds;

  friend bool operator==(const ExhibitObject&, const ExhibitObject&) = default;
};

struct Visit {
  ObjectId object;
  Tick arrival_time = 0;
  Tick dwell_seconds = 0;

  friend bool operator==(const Visit&, const Visit&) = default;
};

struct SurveyAnswer {
  std::string question_id;
  int rating = 0;
  std::optional<std::string> free_text;

  friend bool operator==(const SurveyAnswer&, const SurveyAnswer&) = default;
};

struct SurveyResponse {
  TicketId ticket;
  std::vector<SurveyAnswer> answers;

  /// Throws DomainError on duplicate question ids or ratings outside 1..5.
  void validate() const;

  friend bool operator==(const SurveyResponse&, const SurveyResponse&) = default;
};

struct SmartTicket {
  TicketId id;
  HybridTag tag;
  std::string language;
  bool paid = false;
  std::vector<Visit> visited;
  std::optional<SurveyResponse> survey;

  friend bool operator==(const SmartTicket&, const SmartTicket&) = default;
};

}  // namespace museum
