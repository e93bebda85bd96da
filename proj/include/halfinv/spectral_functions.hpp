#ifndef HALFINV_SPECTRAL_FUNCTIONS_HPP
#define HALFINV_SPECTRAL_FUNCTIONS_HPP

#include <cmath>
#include <numbers>

namespace halfinv {

inline constexpr double kPi = std::numbers::pi;

/// Root convention for spectra: rho = sqrt(lambda) for lambda >= 0 and
/// rho = -sqrt(-lambda) for lambda < 0, so a negative entry flags rho^2 < 0.
inline double signed_sqrt(double lambda) {
  return lambda >= 0.0 ? std::sqrt(lambda) : -std::sqrt(-lambda);
}
inline double signed_square(double rho) {
  return rho >= 0.0 ? rho * rho : -rho * rho;
}

/// sin(x)/x.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// The functions below are entire in lambda = rho^2 and stay real for
// negative lambda (cos -> cosh). Small |lambda| t^2 uses Taylor series.

/// cos(rho t).
inline double cos_rho(double lambda, double t) {
  if (lambda >= 0.0) return std::cos(std::sqrt(lambda) * t);
  return std::cosh(std::sqrt(-lambda) * t);
}

/// sin(rho t) / rho, equal to t at lambda = 0.
inline double sin_over_rho(double lambda, double t) {
  const double z = lambda * t * t;
  if (std::abs(z) < 1e-3) {
    return t * (1.0 - z / 6.0 * (1.0 - z / 20.0 * (1.0 - z / 42.0)));
  }
  if (lambda > 0.0) {
    const double r = std::sqrt(lambda);
    return std::sin(r * t) / r;
  }
  const double r = std::sqrt(-lambda);
  return std::sinh(r * t) / r;
}

/// rho sin(rho t) = lambda * sin_over_rho.
inline double rho_sin_rho(double lambda, double t) {
  return lambda * sin_over_rho(lambda, t);
}

/// d/dlambda cos(rho t) = -t sin(rho t) / (2 rho).
inline double dcos_rho(double lambda, double t) {
  return -0.5 * t * sin_over_rho(lambda, t);
}

/// d/dlambda [sin(rho t)/rho] = (t cos(rho t) - sin(rho t)/rho) / (2 lambda).
inline double dsin_over_rho(double lambda, double t) {
  const double z = lambda * t * t;
  const double t3 = t * t * t;
  if (std::abs(z) < 1e-2) {
    // -t^3/6 + z t^3/60 - z^2 t^3/1680 + z^3 t^3/90720
    return t3 * (-1.0 / 6.0 + z * (1.0 / 60.0 + z * (-1.0 / 1680.0 +
                                                        z / 90720.0)));
  }
  return (t * cos_rho(lambda, t) - sin_over_rho(lambda, t)) / (2.0 * lambda);
}

/// d/dlambda [rho sin(rho t)] = (sin(rho t)/rho + t cos(rho t)) / 2.
inline double drho_sin_rho(double lambda, double t) {
  return 0.5 * (sin_over_rho(lambda, t) + t * cos_rho(lambda, t));
}

}  // namespace halfinv

#endif  // HALFINV_SPECTRAL_FUNCTIONS_HPP
