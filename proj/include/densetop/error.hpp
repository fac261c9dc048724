#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace densetop {

/// Machine-readable failure categories. Every code has a distinct name that
/// the CLI surfaces verbatim.
enum class ErrorCode {
  InvalidArgument,
  UniverseMismatch,
  BoundExceeded,
  NotAClosureOperator,
  EmptyF,
  FullF,
  EmptySubspace,
  InvalidTopology,
  FNotClosed,
  InconsistentDimensions,
  NonfiniteState,
  MisalignedSegments,
  BadInterval,
  TooManyCells,
  DegenerateGrid,
  EmptyCloud,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace densetop
