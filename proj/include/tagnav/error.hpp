#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tagnav {

enum class ErrorCode {
  DuplicateResource,
  EmptyId,
  InvalidTag,
  UnknownResource,
  UnknownTag,
  EmptyScope,
  EmptyCollection,
  UnknownNode,
  CycleError,
  CategoryConflict,
  UnknownCategoryTag,
  StateLimitExceeded,
  InfeasibleTag,
  AtRoot,
  StaleSession,
  InvalidSpec,
  InvalidArgument,
  EngineFailure,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports is an Error carrying a code, so callers
// (the HTTP layer in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tagnav
