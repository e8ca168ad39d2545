#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "museum/config.hpp"
#include "museum/core/types.hpp"
#include "museum/guidance/routing.hpp"

namespace museum::sim {

inline constexpr int kConfigSchemaVersion = 1;

struct TheftScript {
  ObjectId object;
  Tick time = 0;
  NodeId gate;  // entry or exit gate the object is carried through
  bool battery_depleted = false;
};

struct EnvExcursion {
  ObjectId object;
  Channel channel = Channel::Temperature;
  double value = 0.0;  // ignored for Channel::Mechanical
  Tick time = 0;
};

struct ScenarioConfig {
  Tick duration = 4 * 3600;
  std::uint64_t seed = 1;

  // Either explicit arrival times or a Poisson rate.
  std::vector<Tick> arrival_times;
  double arrivals_per_hour = 0.0;
  Tick admission_cutoff = 1800;  // no new visitors this close to closing

  double dwell_mu = 4.499809670330265;  // ln 90
  double dwell_sigma = 0.5;
  double default_dwell = 90.0;
  std::map<std::string, double> language_mix;  // empty: uniform over languages

  int min_objects_per_visitor = 3;
  int max_objects_per_visitor = 6;
  double survey_probability = 0.6;

  Tick cr_fix_period = 5;
  Tick object_fix_period = 60;
  Tick sensor_period = 60;
  double max_walking_speed = 1.5;  // m/s, bounds edge geometry
  double gate_pass_distance = 0.5;
  double viewing_distance = 0.5;

  guidance::RouteMode routing_mode = guidance::RouteMode::CrowdBalanced;
  double routing_alpha = guidance::kDefaultCrowdAlpha;

  std::vector<TheftScript> thefts;
  std::vector<EnvExcursion> env_excursions;
};

/// A parsed museum configuration document.
struct MuseumFile {
  MuseumConfig museum;
  ScenarioConfig scenario;

  /// Museum checks plus scenario checks; throws ConfigError.
  void validate() const;
};

/// Strict parse: unknown fields, missing required fields and wrong types all
/// throw ConfigError. Does not call validate().
MuseumFile parse_museum_file(const nlohmann::json& document);
MuseumFile load_museum_file(const std::filesystem::path& path);

}  // namespace museum::sim
