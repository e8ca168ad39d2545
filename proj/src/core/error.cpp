#include "museum/core/error.hpp"

namespace museum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Unclassified: return "Unclassified";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::StaleMessage: return "StaleMessage";
    case ErrorCode::UnknownSubject: return "UnknownSubject";
    case ErrorCode::NoInfo: return "NoInfo";
    case ErrorCode::DuplicateSurvey: return "DuplicateSurvey";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::InvalidMessage: return "InvalidMessage";
    case ErrorCode::LogFormat: return "LogFormat";
    case ErrorCode::GateRejected: return "GateRejected";
    case ErrorCode::NotServerBound: return "NotServerBound";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
  }
  return "Unknown";
}

}  // namespace museum
