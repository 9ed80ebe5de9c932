#include "shallowwell/error.hpp"

namespace shallowwell {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidGridSpec:
    return "InvalidGridSpec";
  case ErrorCode::LengthMismatch:
    return "LengthMismatch";
  case ErrorCode::TailNotDecayed:
    return "TailNotDecayed";
  case ErrorCode::InvalidPotential:
    return "InvalidPotential";
  case ErrorCode::UnsupportedChain:
    return "UnsupportedChain";
  case ErrorCode::NonPathComponent:
    return "NonPathComponent";
  case ErrorCode::InvalidTermTable:
    return "InvalidTermTable";
  case ErrorCode::DegenerateShift:
    return "DegenerateShift";
  case ErrorCode::BracketFailure:
    return "BracketFailure";
  case ErrorCode::NoConvergence:
    return "NoConvergence";
  case ErrorCode::SingularPade:
    return "SingularPade";
  case ErrorCode::PoleAtEvaluation:
    return "PoleAtEvaluation";
  case ErrorCode::NonNormalizable:
    return "NonNormalizable";
  case ErrorCode::OptimizerStalled:
    return "OptimizerStalled";
  case ErrorCode::ConfigError:
    return "ConfigError";
  }
  return "Unknown";
}

} // namespace shallowwell
