#include "museum/core/types.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "museum/core/error.hpp"

namespace museum {

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

PolarCoord PolarCoord::make(double r, double theta) {
  if (!std::isfinite(r) || !std::isfinite(theta) || r < 0.0) {
    throw Error(ErrorCode::DomainError, "polar coordinate needs finite r >= 0 and finite theta");
  }
  if (r == 0.0) return PolarCoord(0.0, 0.0);
  constexpr double pi = std::numbers::pi;
  double t = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
  if (t <= -pi) t += 2.0 * pi;
  return PolarCoord(r, t);
}

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::Temperature: return "temperature";
    case Channel::Pressure: return "pressure";
    case Channel::Humidity: return "humidity";
    case Channel::Light: return "light";
    case Channel::Ph: return "ph";
    case Channel::Gas: return "gas";
    case Channel::Mechanical: return "mechanical";
  }
  return "unknown";
}

std::optional<Channel> channel_from_string(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Channel::Mechanical); ++i) {
    auto c = static_cast<Channel>(i);
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

void SurveyResponse::validate() const {
  std::set<std::string> seen;
  for (const auto& answer : answers) {
    if (!seen.insert(answer.question_id).second) {
      throw Error(ErrorCode::DomainError, "duplicate survey question '" + answer.question_id + "'");
    }
    if (answer.rating < 1 || answer.rating > 5) {
      throw Error(ErrorCode::DomainError, "survey rating must be 1..5 for '" + answer.question_id + "'");
    }
  }
}

}  // namespace museum
