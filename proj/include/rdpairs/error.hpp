#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdp {

enum class ErrorCode {
  UnknownFixture,
  ParameterOutOfRange,
  MalformedKey,
  EmbeddingInvalid,
  BallTooLarge,
  NotEnumerated,
  WindowTooSmall,
  ModelMismatch,
  ModeMismatch,
  SupportNotEnumerated,
  NegativeEntry,
  GraphTooLarge,
  BallInsufficient,
  TruncationOverflow,
  PowerOverflow,
  MissingRho,
  NotNormal,
  InvalidArgument,
  IoError,
};

std::string_view toString(ErrorCode code);

/// True for errors raised when a configured size cap is hit.
bool isCapError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Cap errors carry the last size that completed (radius, power, iteration).
class CapError : public Error {
 public:
  CapError(ErrorCode code, const std::string& what, long lastCompleted)
      : Error(code, what + " (last completed: " + std::to_string(lastCompleted) + ")"),
        lastCompleted_(lastCompleted) {}

  long lastCompleted() const noexcept { return lastCompleted_; }

 private:
  long lastCompleted_;
};

}  // namespace rdp
