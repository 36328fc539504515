#pragma once

#include <stdexcept>
#include <string>

namespace fracsum {

// Stable numeric values: these are mirrored one-to-one by fsum_status in the C header.
enum class ErrorCode : int {
  InvalidArgument = 1,
  DimensionMismatch = 2,
  EpsOutOfRange = 3,
  PreconditionViolated = 4,
  NotContracting = 5,
  BudgetExceeded = 6,
  SingularSystem = 7,
  BoxTooSmall = 8,
  CellMismatch = 9,
  ModeMismatch = 10,
  AllocationLimit = 11,
  EmptyRaster = 12,
  MisalignedOrigins = 13,
  DegenerateSet = 14,
  NotSimilitude = 15,
  WitnessFailed = 16,
  InvalidC = 17,
  ThresholdNotMet = 18,
  InvariantViolated = 19,
  CertificateFailed = 20,
  ConfigInvalid = 21,
  IoError = 22,
  Internal = 23,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fracsum
