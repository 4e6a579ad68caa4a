#pragma once

#include <stdexcept>
#include <string>

namespace attitude {

enum class ErrorCode {
  kNotSkew,
  kNotUnitAxis,
  kInvalidReference,
  kOffManifold,
  kNonPositiveGain,
  kInvalidGains,
  kNonFiniteState,
  kInvalidConfig,
  kParse,
  kIo,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the integrator when a step produces inf/nan. Carries the time of
// the last state that was still finite.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(double last_valid_time, const std::string& what)
      : Error(ErrorCode::kNonFiniteState, what),
        last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace attitude
