#pragma once

#include <stdexcept>
#include <string>

namespace dicelab {

enum class Err {
  FaceOutOfRange,
  BadSum,
  DimensionMismatch,
  MethodUnavailable,
  RejectionBudgetExceeded,
  TooLarge,
  GridTooSmall,
  PairingFailure,
  TruncationTooSmall,
  WitnessSearchFailed,
  DomainError,
  BadPattern,
  BadConfig,
  IoError,
};

const char* err_name(Err e);

class DiceLabError : public std::runtime_error {
public:
  DiceLabError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw DiceLabError(code, what);
}

}  // namespace dicelab
