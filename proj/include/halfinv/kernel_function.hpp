#ifndef HALFINV_KERNEL_FUNCTION_HPP
#define HALFINV_KERNEL_FUNCTION_HPP

#include <cstddef>
#include <span>

#include "halfinv/grid_function.hpp"

namespace halfinv {

/// Default number of samples for kernels on (0, pi).
inline constexpr std::size_t kKernelGridSize = 2049;

/// Square-integrable kernel on (0, pi) appearing in the transformation
/// operator representations.
class KernelFunction {
 public:
  explicit KernelFunction(GridFunction values);

  static KernelFunction zero(std::size_t grid = kKernelGridSize);

  /// f(t) = c_0/pi + (2/pi) sum_{m>=1} c_m cos(m t), so that the integral of
  /// f(t) cos(m t) over (0, pi) equals c_m for m <= coeffs.size() - 1.
  static KernelFunction cosine_series(std::span<const double> coeffs,
                                      std::size_t grid = kKernelGridSize);

  /// f(t) = (2/pi) sum_{m>=1} s_m sin((m - 1/2) t), so that the integral of
  /// f(t) sin((m - 1/2) t) over (0, pi) equals s_m; coeffs[0] holds s_1.
  static KernelFunction half_sine_series(std::span<const double> coeffs,
                                         std::size_t grid = kKernelGridSize);

  const GridFunction& values() const noexcept { return values_; }
  double operator()(double t) const { return values_(t); }
  double l2_norm() const { return values_.l2_norm(); }

 private:
  GridFunction values_;
};

double l2_distance(const KernelFunction& a, const KernelFunction& b);

}  // namespace halfinv

#endif  // HALFINV_KERNEL_FUNCTION_HPP
