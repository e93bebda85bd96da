#ifndef HALFINV_ERRORS_HPP
#define HALFINV_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace halfinv {

enum class ErrorCode {
  InvalidArgument,
  NonFiniteState,
  GridTooCoarse,
  WronskianMismatch,
  BracketFailure,
  TooShort,
  NearZeroDenominator,
  IllConditioned,
  PoleProximity,
  NonPositiveNorming,
  SingularGLSystem,
  DenominatorUnderflow,
};

const char* to_string(ErrorCode code) noexcept;

/// Failure raised by every numerical routine of the library.
///
/// `index` identifies the offending eigenvalue or moment (1-based) when the
/// failure is tied to one; `step` is set by the reconstruction pipeline and
/// names the stage (1..5) at which the failure surfaced.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorCode code, const std::string& what,
                 std::optional<long> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> index() const noexcept { return index_; }
  std::optional<int> step() const noexcept { return step_; }

  /// Copy of this error tagged with a pipeline step.
  NumericalError with_step(int step) const;

 private:
  ErrorCode code_;
  std::optional<long> index_;
  std::optional<int> step_;
  std::string detail_;
};

}  // namespace halfinv

#endif  // HALFINV_ERRORS_HPP
