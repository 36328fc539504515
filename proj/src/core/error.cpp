#include "error.hpp"

namespace fracsum {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::CellMismatch: return "CellMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::AllocationLimit: return "AllocationLimit";
    case ErrorCode::EmptyRaster: return "EmptyRaster";
    case ErrorCode::MisalignedOrigins: return "MisalignedOrigins";
    case ErrorCode::DegenerateSet: return "DegenerateSet";
    case ErrorCode::NotSimilitude: return "NotSimilitude";
    case ErrorCode::WitnessFailed: return "WitnessFailed";
    case ErrorCode::InvalidC: return "InvalidC";
    case ErrorCode::ThresholdNotMet: return "ThresholdNotMet";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace fracsum
