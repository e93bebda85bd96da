#include "halfinv/errors.hpp"

namespace halfinv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::WronskianMismatch: return "WronskianMismatch";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::NearZeroDenominator: return "NearZeroDenominator";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::NonPositiveNorming: return "NonPositiveNorming";
    case ErrorCode::SingularGLSystem: return "SingularGLSystem";
    case ErrorCode::DenominatorUnderflow: return "DenominatorUnderflow";
  }
  return "Unknown";
}

namespace {

std::string format(ErrorCode code, const std::string& what,
                   std::optional<long> index, std::optional<int> step) {
  std::string s = to_string(code);
  if (index) s += "(" + std::to_string(*index) + ")";
  if (step) s += " [step " + std::to_string(*step) + "]";
  s += ": " + what;
  return s;
}

}  // namespace

NumericalError::NumericalError(ErrorCode code, const std::string& what,
                               std::optional<long> index)
    : std::runtime_error(format(code, what, index, std::nullopt)),
      code_(code),
      index_(index),
      detail_(what) {}

NumericalError NumericalError::with_step(int step) const {
  NumericalError e(code_, detail_, index_);
  static_cast<std::runtime_error&>(e) =
      std::runtime_error(format(code_, detail_, index_, step));
  e.step_ = step;
  return e;
}

}  // namespace halfinv
