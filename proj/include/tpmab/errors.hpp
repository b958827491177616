#pragma once

#include <stdexcept>
#include <string>

namespace tpmab {

enum class ErrorCode {
  NonDivisorAlpha,
  NonPositiveDimension,
  NegativeMaxReward,
  LengthMismatch,
  FuturePull,
  DuplicateDelivery,
  UnknownPull,
  EmptyPool,
  UnknownScenario,
  HorizonTooShort,
  DomainError,
  NonPositiveGap,
  BadHeader,
  BadLevel,
  BadPosition,
  NoPlaylists,
  EmptyArm,
  InsufficientSamples,
  CorruptPool,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tpmab
