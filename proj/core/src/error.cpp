#include "umbral/error.hpp"

namespace umbral {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NegativePowerOfDeltaSeries: return "NegativePowerOfDeltaSeries";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadZerothMoment: return "BadZerothMoment";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::UndeclaredIndeterminate: return "UndeclaredIndeterminate";
    case ErrorCode::ZeroMomentReciprocal: return "ZeroMomentReciprocal";
    case ErrorCode::NonUnitLinearMoment: return "NonUnitLinearMoment";
    case ErrorCode::IncoherentAtom: return "IncoherentAtom";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> offset)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      offset_(offset) {}

}  // namespace umbral
