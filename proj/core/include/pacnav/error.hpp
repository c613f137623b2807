#pragma once

#include <stdexcept>
#include <string>

namespace pacnav {

enum class ErrorCode {
  kInvalidArgument,
  kPlacementFailure,
  kSpawnInfeasible,
  kNoPriorEstimate,
  kTooShort,
  kEmptySet,
  kConfig,
  kIo,
};

const char* to_string(ErrorCode code);

/// All library failures surface as this exception; `code()` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pacnav
