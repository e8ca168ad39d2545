#include "museum/radio/radio.hpp"

#include <cmath>
#include <string>

#include "museum/core/error.hpp"

namespace museum::radio {

std::string_view to_string(ReaderRole role) {
  switch (role) {
    case ReaderRole::GateIn: return "gate_in";
    case ReaderRole::GateOut: return "gate_out";
    case ReaderRole::Central: return "central";
    case ReaderRole::TicketReader: return "ticket_reader";
  }
  return "unknown";
}

void ReaderModel::validate() const {
  if (!(passive_range > 0.0) || !std::isfinite(passive_range)) {
    throw Error(ErrorCode::ConfigError, "reader " + id.str() + ": passive_range must be > 0");
  }
  if (!(active_range >= passive_range) || !std::isfinite(active_range)) {
    throw Error(ErrorCode::ConfigError, "reader " + id.str() + ": active_range must be >= passive_range");
  }
}

bool can_read(const ReaderModel& reader, const HybridTag& tag, double distance) {
  if (!(distance >= 0.0)) throw Error(ErrorCode::DomainError, "read distance must be non-negative");
  const double range = tag.battery_charged ? reader.active_range : reader.passive_range;
  return distance <= range;
}

PolarCoord to_polar(const Position& point, const Position& origin) {
  const double dx = point.x - origin.x;
  const double dy = point.y - origin.y;
  return PolarCoord::make(std::hypot(dx, dy), std::atan2(dy, dx));
}

Position to_cartesian(const PolarCoord& p, const Position& origin) {
  return {origin.x + p.r() * std::cos(p.theta()), origin.y + p.r() * std::sin(p.theta())};
}

namespace {

void require_in_range(const ReaderModel& cr, const Position& true_pos) {
  if (cr.role != ReaderRole::Central) {
    throw Error(ErrorCode::DomainError, "localize needs the central reader, got " + cr.id.str());
  }
  const double d = distance(cr.position, true_pos);
  if (d > cr.active_range) {
    throw Error(ErrorCode::OutOfRange, "subject " + std::to_string(d) + " m from " + cr.id.str() +
                                           " exceeds active range");
  }
}

}  // namespace

PolarCoord localize(const ReaderModel& cr, const Position& true_pos) {
  require_in_range(cr, true_pos);
  return to_polar(true_pos, cr.position);
}

PolarCoord localize(const ReaderModel& cr, const Position& true_pos, const LocalizationModel& model,
                    RngStream& stream) {
  if (model.noise_sigma_r < 0.0 || model.noise_sigma_theta < 0.0) {
    throw Error(ErrorCode::DomainError, "localization sigmas must be non-negative");
  }
  const PolarCoord exact = localize(cr, true_pos);
  if (model.exact()) return exact;
  // Both draws are taken unconditionally so the stream advances identically
  // whatever the sigmas are.
  const double dr = stream.normal() * model.noise_sigma_r;
  const double dtheta = stream.normal() * model.noise_sigma_theta;
  const double r = std::max(0.0, exact.r() + dr);
  return PolarCoord::make(r, exact.theta() + dtheta);
}

}  // namespace museum::radio
