#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "museum/core/ids.hpp"
#include "museum/core/map.hpp"
#include "museum/core/types.hpp"
#include "museum/radio/radio.hpp"

namespace museum {

/// Everything about the building and its devices that does not change
/// during a run.
struct MuseumConfig {
  std::vector<std::string> languages;
  std::string default_language;
  double ticket_price = 0.0;

  MuseumMap map;
  std::map<ObjectId, ExhibitObject> objects;

  radio::ReaderModel central_reader;
  // One gate reader per gate node, keyed by the reader id (== gate node id).
  std::map<ReaderId, radio::ReaderModel> gate_readers;
  radio::ReaderModel ticket_reader;
  radio::LocalizationModel localization;

  std::vector<std::string> survey_questions;
  double location_epsilon = 0.5;

  const ExhibitObject* find_object(const ObjectId& id) const;
  const radio::ReaderModel* find_gate(const ReaderId& id) const;
  /// Object owning an object tag, if any.
  const ExhibitObject* object_by_tag(const TagId& tag) const;
  bool supports_language(const std::string& language) const;

  /// Throws ConfigError listing every problem found.
  void validate() const;
};

/// Default reader geometry: gates 2 m passive / 10 m active, ticket reader 1 m.
inline constexpr double kDefaultGatePassiveRange = 2.0;
inline constexpr double kDefaultGateActiveRange = 10.0;
inline constexpr double kDefaultTicketReaderRange = 1.0;
inline constexpr double kDefaultLocationEpsilon = 0.5;

}  // namespace museum
