#include "athermal/errors.hpp"

namespace athermal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidM: return "InvalidM";
    case ErrorCode::BetaMismatch: return "BetaMismatch";
    case ErrorCode::NotProductPure: return "NotProductPure";
    case ErrorCode::InvalidChoi: return "InvalidChoi";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ZeroGibbsComponent: return "ZeroGibbsComponent";
    case ErrorCode::DimNot2: return "DimNot2";
    case ErrorCode::DiagonalMismatch: return "DiagonalMismatch";
    case ErrorCode::LPNumericalFailure: return "LPNumericalFailure";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::UnsupportedSmoothing: return "UnsupportedSmoothing";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptyTypicalSet: return "EmptyTypicalSet";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace athermal
