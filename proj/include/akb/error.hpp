#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace akb {

enum class ErrorCode {
  NotALattice,
  NoBottom,
  CycleInOrder,
  UnknownLevelName,
  DuplicateLevelName,
  ForeignLevel,
  SyntaxError,
  DuplicateLatticeDecl,
  OpenVariableInPattern,
  UnresolvedVariable,
  StaleRedex,
  ScriptMismatch,
  MalformedTrace,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace akb
