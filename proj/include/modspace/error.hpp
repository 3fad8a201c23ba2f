#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modspace {

enum class ErrorCode {
  InvalidArgument,
  GridMismatch,
  IncompatibleDilation,
  OddLengthAmbiguity,
  PartitionGap,
  NotAFrame,
  NoConvergence,
  LengthMismatch,
  BandOverflow,
  DepthOverflow,
  BandTooNarrow,
  AliasedCollection,
  EnumerationTooLarge,
  EmptyList,
  ZeroDenominator,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the toolkit carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) raise(code, what);
}

}  // namespace modspace
