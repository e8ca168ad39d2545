#pragma once

#include <set>
#include <string>

#include "museum/core/event.hpp"
#include "museum/core/map.hpp"
#include "museum/core/types.hpp"
#include "museum/guidance/routing.hpp"

namespace museum::guidance {

/// Seconds still needed: mean own dwell (or `default_dwell` with no history)
/// times the number of unvisited objects, plus the Shortest-mode walk over
/// them from `current_node`. Zero when nothing is left.
double estimate_remaining_time(const SmartTicket& ticket, const std::set<ObjectId>& unvisited,
                               const PathTable& paths, const NodeId& current_node,
                               double default_dwell);
double estimate_remaining_time(const SmartTicket& ticket, const std::set<ObjectId>& unvisited,
                               const MuseumMap& map, const NodeId& current_node,
                               double default_dwell);

struct InfoLookup {
  InfoRecord record;
  std::string language;  // language actually served
  bool fallback = false;
};

/// Record in `language`, else in `default_language` with fallback set.
/// Throws NoInfo when neither exists.
InfoLookup lookup_object_info(const ExhibitObject& object, const std::string& language,
                              const std::string& default_language);

/// Builds the survey event body (response plus the ticket's visited object
/// ids in visit order). Throws DuplicateSurvey if the ticket already has a
/// survey and DomainError for malformed responses.
SurveySubmitted submit_survey(const SmartTicket& ticket, const SurveyResponse& response);

}  // namespace museum::guidance
