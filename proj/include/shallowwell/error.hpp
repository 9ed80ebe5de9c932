#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shallowwell {

enum class ErrorCode {
  InvalidGridSpec,
  LengthMismatch,
  TailNotDecayed,
  InvalidPotential,
  UnsupportedChain,
  NonPathComponent,
  InvalidTermTable,
  DegenerateShift,
  BracketFailure,
  NoConvergence,
  SingularPade,
  PoleAtEvaluation,
  NonNormalizable,
  OptimizerStalled,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        m_code(code) {}

  ErrorCode code() const noexcept { return m_code; }

private:
  ErrorCode m_code;
};

} // namespace shallowwell
