// Test fixtures: sampled potentials.
#ifndef HALFINV_TESTS_SAMPLES_HPP
#define HALFINV_TESTS_SAMPLES_HPP

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "halfinv/grid_function.hpp"

namespace samples {

inline constexpr double pi = std::numbers::pi;

inline halfinv::GridFunction on(double a, double b,
                                const std::function<double(double)>& f,
                                std::size_t per_pi = 1024) {
  const auto n = static_cast<std::size_t>(std::lround((b - a) / pi * per_pi)) + 1;
  return halfinv::GridFunction::sample(a, b, n, f);
}

// Smooth random potential: a few Fourier modes on (0, 2 pi).
inline std::function<double(double)> random_potential(std::mt19937_64& rng,
                                                      double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::array<double, 8> c{}, s{};
  for (int k = 0; k < 8; ++k) {
    c[k] = u(rng) / (1 + k);
    s[k] = u(rng) / (1 + k);
  }
  return [c, s](double x) {
    double v = 0.0;
    for (int k = 0; k < 8; ++k) v += c[k] * std::cos(k * x / 2) + s[k] * std::sin(k * x / 2);
    return v;
  };
}

struct Problem {
  std::function<double(double)> q;
  double h = 0.0;
  double H = 0.0;
};

// Random (q, h, H) with ||q||_{L2(0,2pi)} + |h| + |H| close to but below Q.
inline Problem random_in_ball(std::mt19937_64& rng, double Q) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto q = random_potential(rng, 1.0);
  double h = u(rng), H = u(rng);
  const auto g = on(0.0, 2.0 * pi, q, 256);
  const double norm = g.l2_norm() + std::abs(h) + std::abs(H);
  std::uniform_real_distribution<double> frac(0.5, 0.95);
  const double scale = frac(rng) * Q / norm;
  return {[q, scale](double x) { return scale * q(x); }, scale * h, scale * H};
}

}  // namespace samples

#endif  // HALFINV_TESTS_SAMPLES_HPP
