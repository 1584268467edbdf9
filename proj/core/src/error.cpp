#include "qaf/error.hpp"

namespace qaf {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUnitRotor: return "NonUnitRotor";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::RaggedInput: return "RaggedInput";
    case ErrorKind::ZeroPowerSignal: return "ZeroPowerSignal";
    case ErrorKind::CalibrationFailed: return "CalibrationFailed";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NonFiniteUpdate: return "NonFiniteUpdate";
    case ErrorKind::ZeroRegressor: return "ZeroRegressor";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::InsufficientTrials: return "InsufficientTrials";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ChannelCountError: return "ChannelCountError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qaf
