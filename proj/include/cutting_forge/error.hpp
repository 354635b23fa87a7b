#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cutting_forge {

enum class ErrorKind {
  UnsupportedMixedRadicals,
  InfiniteArithmetic,
  VerticalLineUnsupported,
  CoverageGap,
  PreconditionViolated,
  RetryBudgetExhausted,
  GroundSetTooLarge,
  EmptyFilter,
  CombinatorialBudgetExceeded,
  NotACube,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cutting_forge
