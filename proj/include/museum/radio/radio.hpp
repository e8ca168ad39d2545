#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "museum/core/ids.hpp"
#include "museum/core/rng.hpp"
#include "museum/core/types.hpp"

namespace museum::radio {

enum class ReaderRole { GateIn, GateOut, Central, TicketReader };

std::string_view to_string(ReaderRole role);

struct ReaderModel {
  ReaderId id;
  Position position;
  double passive_range = 2.0;
  double active_range = 10.0;
  ReaderRole role = ReaderRole::GateIn;

  /// Throws ConfigError unless active_range >= passive_range > 0.
  void validate() const;

  friend bool operator==(const ReaderModel&, const ReaderModel&) = default;
};

/// Gaussian noise on the polar fix, independent in r and theta.
struct LocalizationModel {
  double noise_sigma_r = 0.0;
  double noise_sigma_theta = 0.0;

  bool exact() const noexcept { return noise_sigma_r == 0.0 && noise_sigma_theta == 0.0; }

  friend bool operator==(const LocalizationModel&, const LocalizationModel&) = default;
};

/// Charged tags are heard out to active_range, depleted ones only within
/// passive_range. Distance must be non-negative.
bool can_read(const ReaderModel& reader, const HybridTag& tag, double distance);

/// Exact polar coordinates of `point` seen from `origin`, canonical form.
PolarCoord to_polar(const Position& point, const Position& origin);

Position to_cartesian(const PolarCoord& p, const Position& origin);

/// Central-reader fix of a subject at `true_pos`. Noise is drawn from
/// `stream`; r is clamped at 0. Throws OutOfRange beyond the reader's
/// active range and DomainError when `cr` is not a central reader.
PolarCoord localize(const ReaderModel& cr, const Position& true_pos, const LocalizationModel& model,
                    RngStream& stream);

/// Noise-free overload.
PolarCoord localize(const ReaderModel& cr, const Position& true_pos);

}  // namespace museum::radio
