#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qzero {

enum class ErrorCode {
  InvalidInput,
  InvalidAlgebra,
  DimensionMismatch,
  NonSquareMatrix,
  RankDeficient,
  RankMismatch,
  NotSublattice,
  NotHermitian,
  NotClosed,
  MissingUnit,
  Degenerate,
  AlgebraMismatch,
  ZeroVector,
  CoordinateNotInOrder,
  NonRationalDeterminant,
  DegenerateRestriction,
  NoHyperbolicPartner,
  SelectionFailed,
  CapExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::MissingUnit: return "MissingUnit";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CoordinateNotInOrder: return "CoordinateNotInOrder";
    case ErrorCode::NonRationalDeterminant: return "NonRationalDeterminant";
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::NoHyperbolicPartner: return "NoHyperbolicPartner";
    case ErrorCode::SelectionFailed: return "SelectionFailed";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qzero
