#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace museum {

enum class ErrorCode {
  DomainError,
  Unclassified,
  ConfigError,
  OutOfRange,
  StaleMessage,
  UnknownSubject,
  NoInfo,
  DuplicateSurvey,
  Unreachable,
  UnknownKind,
  InvalidMessage,
  LogFormat,
  GateRejected,
  NotServerBound,
  InvalidTransition,
};

std::string_view to_string(ErrorCode code);

// Carries a machine-readable code next to the human message; the CLI prints
// both as `error: <code>: <message>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace museum
