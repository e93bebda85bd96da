#include "halfinv/kernel_function.hpp"

#include <cmath>
#include <vector>

#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"

namespace halfinv {

KernelFunction::KernelFunction(GridFunction values) : values_(std::move(values)) {
  if (std::abs(values_.a()) > 1e-12 || std::abs(values_.b() - kPi) > 1e-12) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "kernels live on (0, pi)");
  }
}

KernelFunction KernelFunction::zero(std::size_t grid) {
  return KernelFunction(GridFunction::constant(0.0, kPi, grid, 0.0));
}

KernelFunction KernelFunction::cosine_series(std::span<const double> coeffs,
                                             std::size_t grid) {
  std::vector<double> v(grid, 0.0);
  const double h = kPi / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) * h;
    double s = coeffs.empty() ? 0.0 : coeffs[0] / kPi;
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      s += 2.0 / kPi * coeffs[m] * std::cos(static_cast<double>(m) * t);
    }
    v[i] = s;
  }
  return KernelFunction(GridFunction(0.0, kPi, std::move(v)));
}

KernelFunction KernelFunction::half_sine_series(std::span<const double> coeffs,
                                                std::size_t grid) {
  std::vector<double> v(grid, 0.0);
  const double h = kPi / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) * h;
    double s = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      s += 2.0 / kPi * coeffs[m] * std::sin((static_cast<double>(m) + 0.5) * t);
    }
    v[i] = s;
  }
  return KernelFunction(GridFunction(0.0, kPi, std::move(v)));
}

double l2_distance(const KernelFunction& a, const KernelFunction& b) {
  return l2_distance(a.values(), b.values());
}

}  // namespace halfinv
