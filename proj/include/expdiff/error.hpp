#pragma once

#include <stdexcept>
#include <string>

namespace expdiff {

enum class ErrorCode {
  Budget,
  NotInGamma,
  SoundnessAlarm,
  Parse,
  NotDisjoint,
  NonCommuting,
  DimTooSmall,
  Degenerate,
  FVanishes,
  FactorizationIncomplete,
  PointNotOnU,
  NoExtension,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Every failure the library reports goes through this type; the code is what
// the CLI maps to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace expdiff
