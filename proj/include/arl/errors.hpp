#pragma once

#include <stdexcept>
#include <string>

namespace arl {

enum class ErrorKind {
  InfiniteGroup,
  InvalidHom,
  CompositionMismatch,
  PrimeMismatch,
  NotLPrimary,
  InvalidTower,
  TailUnderivable,
  NotARladic,
  NotLAdic,
  NonStabilizing,
  PreconditionViolated,
  NegativeResult,
  FiniteIndex,
  Parse,
  Usage,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace arl
