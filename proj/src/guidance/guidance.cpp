#include "museum/guidance/guidance.hpp"

#include "museum/core/error.hpp"

namespace museum::guidance {

double estimate_remaining_time(const SmartTicket& ticket, const std::set<ObjectId>& unvisited,
                               const PathTable& paths, const NodeId& current_node, double default_dwell) {
  if (!(default_dwell > 0.0)) throw Error(ErrorCode::DomainError, "default dwell must be positive");
  if (unvisited.empty()) return 0.0;

  double mean_dwell = default_dwell;
  if (!ticket.visited.empty()) {
    double sum = 0.0;
    for (const auto& visit : ticket.visited) sum += static_cast<double>(visit.dwell_seconds);
    mean_dwell = sum / static_cast<double>(ticket.visited.size());
  }

  RouteRequest request;
  request.current_node = current_node;
  request.unvisited = unvisited;
  request.mode = RouteMode::Shortest;
  const auto plan = recommend_route(paths, request);
  return mean_dwell * static_cast<double>(unvisited.size()) + static_cast<double>(plan.total_walk_seconds);
}

double estimate_remaining_time(const SmartTicket& ticket, const std::set<ObjectId>& unvisited,
                               const MuseumMap& map, const NodeId& current_node, double default_dwell) {
  const PathTable paths(map);
  return estimate_remaining_time(ticket, unvisited, paths, current_node, default_dwell);
}

InfoLookup lookup_object_info(const ExhibitObject& object, const std::string& language,
                              const std::string& default_language) {
  if (auto it = object.info.find(language); it != object.info.end()) {
    return {it->second, language, false};
  }
  if (auto it = object.info.find(default_language); it != object.info.end()) {
    return {it->second, default_language, true};
  }
  throw Error(ErrorCode::NoInfo, "object " + object.id.str() + " has no info in '" + language +
                                     "' or '" + default_language + "'");
}

SurveySubmitted submit_survey(const SmartTicket& ticket, const SurveyResponse& response) {
  if (ticket.survey) throw Error(ErrorCode::DuplicateSurvey, "ticket " + ticket.id.str() + " already answered");
  if (response.ticket != ticket.id) {
    throw Error(ErrorCode::DomainError, "survey for " + response.ticket.str() + " submitted on " + ticket.id.str());
  }
  response.validate();
  SurveySubmitted body;
  body.response = response;
  body.visited.reserve(ticket.visited.size());
  for (const auto& visit : ticket.visited) body.visited.push_back(visit.object);
  return body;
}

}  // namespace museum::guidance
