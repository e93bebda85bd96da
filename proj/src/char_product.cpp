#include "halfinv/char_product.hpp"

#include <cmath>
#include <string>

#include "halfinv/asymptotics.hpp"
#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"

namespace halfinv {

ZeroProductFunction::ZeroProductFunction(std::vector<double> zeros, double omega,
                                         std::size_t tail_length, TailRule rule)
    : zeros_(std::move(zeros)), omega_(omega), rule_(rule) {
  if (zeros_.empty()) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one zero");
  }
  if (!std::isfinite(omega_)) {
    throw NumericalError(ErrorCode::InvalidArgument, "omega must be finite");
  }
  for (std::size_t i = 1; i < zeros_.size(); ++i) {
    if (!(zeros_[i] > zeros_[i - 1])) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "zeros must be strictly increasing",
                           static_cast<long>(i + 1));
    }
  }
  const std::size_t n = zeros_.size();
  tail_length_ = tail_length == 0 ? 8 * n : std::max(tail_length, n);
  lambdas_.resize(tail_length_);
  for (std::size_t i = 0; i < n; ++i) lambdas_[i] = signed_square(zeros_[i]);
  // Tail in lambda form, (k/2)^2 + omega/pi with k = n - 1: same leading
  // asymptotics as the rho form, exact for constant potentials.
  for (std::size_t i = n; i < tail_length_; ++i) {
    const double k = static_cast<double>(i);
    lambdas_[i] = 0.25 * k * k + omega_ / kPi;
  }
}

double ZeroProductFunction::operator()(double lambda) const {
  const std::size_t M = tail_length_;
  // Reference zero (k/2)^2, k = n - 1, that may cancel against sin(2 rho pi).
  std::size_t singular = 0;  // 0-based index i = k; 0 means none
  double value;
  if (lambda > 0.0) {
    const double rho = std::sqrt(lambda);
    const auto k = static_cast<std::size_t>(std::llround(2.0 * rho));
    if (k >= 1 && k < M) {
      singular = k;
      const double eps = rho - 0.5 * static_cast<double>(k);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      value = -sign * 2.0 * kPi * sinc(2.0 * kPi * eps) /
              (rho * (0.5 * static_cast<double>(k) + rho));
    } else {
      value = sin_over_rho(lambda, 2.0 * kPi);
    }
  } else {
    value = sin_over_rho(lambda, 2.0 * kPi);
  }
  value *= lambdas_[0] - lambda;
  for (std::size_t i = 1; i < M; ++i) {
    const double k = static_cast<double>(i);
    const double num = lambdas_[i] - lambda;
    if (i == singular) {
      value *= num;
    } else {
      value *= num / (0.25 * k * k - lambda);
    }
  }
  // Factors past the modelled tail: log(1 + (omega/pi)/((k/2)^2 - lambda)).
  const double m = static_cast<double>(M) - 0.5;
  const double remainder =
      4.0 * omega_ / kPi * (1.0 / m + 4.0 * lambda / (3.0 * m * m * m));
  value *= std::exp(remainder);
  if (!std::isfinite(value)) {
    throw NumericalError(ErrorCode::NearZeroDenominator,
                         "product evaluation is not finite at lambda = " +
                             std::to_string(lambda));
  }
  return value;
}

double delta_from_zeros(const ZeroProductFunction& zpf, double rho2) {
  return zpf(rho2);
}

std::vector<double> M_moments(const ZeroProductFunction& zpf, double omega,
                              std::size_t m_max) {
  std::vector<double> c(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double r = 0.5 * static_cast<double>(m);
    const double alt = (m % 2 == 0) ? 1.0 : -1.0;
    c[m] = zpf(r * r) - omega * alt;
  }
  return c;
}

KernelFunction extract_M(const ZeroProductFunction& zpf, double omega,
                         std::size_t m_max, std::size_t grid) {
  if (m_max < 4) {
    throw NumericalError(ErrorCode::InvalidArgument, "m_max must be at least 4");
  }
  const std::vector<double> c = M_moments(zpf, omega, m_max);
  return KernelFunction::cosine_series(c, grid);
}

RightKernels extract_right_kernels(const GridFunction& q_right, double H,
                                   std::size_t m_max, std::size_t grid,
                                   const IntegratorOptions& opts) {
  if (m_max < 4) {
    throw NumericalError(ErrorCode::InvalidArgument, "m_max must be at least 4");
  }
  const double omega_plus = omega_pm(q_right, H);
  std::vector<double> cos_moments(m_max + 1);
  std::vector<double> sin_moments(m_max);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double r = static_cast<double>(m);
    const double alt = (m % 2 == 0) ? 1.0 : -1.0;
    cos_moments[m] = psi_boundary(q_right, H, r * r, opts).derivative + omega_plus * alt;
  }
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double r = static_cast<double>(m) - 0.5;
    const double alt = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m+1}
    sin_moments[m - 1] = r * psi_boundary(q_right, H, r * r, opts).value - omega_plus * alt;
  }
  return {KernelFunction::cosine_series(cos_moments, grid),
          KernelFunction::half_sine_series(sin_moments, grid)};
}

}  // namespace halfinv
