#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyops {

enum class ErrorKind {
  NotAUnit,
  CompositionAtNonzeroPoint,
  NotReversible,
  NonUnitConstantTerm,
  NoRationalFit,
  IrregularSingularity,
  NonIntegralResidue,
  DegenerateSymmetricPower,
  NoOperatorInBounds,
  NotMUM,
  IrrationalExponents,
  OrderTooSmall,
  NotSelfDual,
  NotSymPower,
  CannotNormalize,
  ParseError,
  InvalidArgument,
  TruncationExhausted,
};

inline std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::CompositionAtNonzeroPoint: return "CompositionAtNonzeroPoint";
    case ErrorKind::NotReversible: return "NotReversible";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::NoRationalFit: return "NoRationalFit";
    case ErrorKind::IrregularSingularity: return "IrregularSingularity";
    case ErrorKind::NonIntegralResidue: return "NonIntegralResidue";
    case ErrorKind::DegenerateSymmetricPower: return "DegenerateSymmetricPower";
    case ErrorKind::NoOperatorInBounds: return "NoOperatorInBounds";
    case ErrorKind::NotMUM: return "NotMUM";
    case ErrorKind::IrrationalExponents: return "IrrationalExponents";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::NotSelfDual: return "NotSelfDual";
    case ErrorKind::NotSymPower: return "NotSymPower";
    case ErrorKind::CannotNormalize: return "CannotNormalize";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TruncationExhausted: return "TruncationExhausted";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cyops
