#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qaf {

enum class ErrorKind {
  NonUnitRotor,
  DimensionMismatch,
  NonFiniteEvaluation,
  EmptyInput,
  RaggedInput,
  ZeroPowerSignal,
  CalibrationFailed,
  SingularCovariance,
  SingularMatrix,
  NonFiniteUpdate,
  ZeroRegressor,
  NotHermitian,
  AssumptionViolated,
  StepTooLarge,
  InsufficientTrials,
  ParseError,
  ChannelCountError,
  IoError,
  InvalidArgument,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qaf
