#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umbral {

enum class ErrorCode {
  InvalidArgument,
  OrderMismatch,
  OrderExceeded,
  NegativePowerOfDeltaSeries,
  DomainError,
  NotInvertible,
  IndexError,
  TooLarge,
  BadZerothMoment,
  DuplicateName,
  UnknownAtom,
  UndeclaredIndeterminate,
  ZeroMomentReciprocal,
  NonUnitLinearMoment,
  IncoherentAtom,
  UnknownIdentity,
  InvalidDistribution,
  SyntaxError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is stable and is what the
/// CLI reports in its structured error documents.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Byte offset into the parsed text, for syntax errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace umbral
