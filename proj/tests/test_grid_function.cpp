#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "halfinv/errors.hpp"
#include "halfinv/grid_function.hpp"

using namespace halfinv;
constexpr double pi = std::numbers::pi;

TEST_CASE("grid spacing and node reproduction") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> s(37);
  for (double& v : s) v = u(rng);
  const GridFunction f(0.5, 2.0, s);
  CHECK(f.step() == (2.0 - 0.5) / 36.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(f(f.node(k)) == s[k]);
  }
}

TEST_CASE("fewer than 8 samples is rejected") {
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, std::vector<double>(7, 0.0)),
                  NumericalError);
  try {
    GridFunction(0.0, 1.0, std::vector<double>(3, 0.0));
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
  CHECK_THROWS(GridFunction(1.0, 1.0, std::vector<double>(9, 0.0)));
}

TEST_CASE("spline interpolation is fourth-order accurate") {
  auto err = [](std::size_t n) {
    const GridFunction f = GridFunction::sample(0.0, 2 * pi, n, [](double x) {
      return std::cos(x) + 0.3 * std::sin(3 * x);
    });
    double e = 0.0;
    for (int i = 0; i <= 997; ++i) {
      const double x = 2 * pi * i / 997.0;
      e = std::max(e, std::abs(f(x) - std::cos(x) - 0.3 * std::sin(3 * x)));
    }
    return e;
  };
  const double e1 = err(65);
  const double e2 = err(129);
  CHECK(e1 < 1e-4);
  CHECK(e1 / e2 > 12.0);
  // Cubics are reproduced exactly.
  const GridFunction c = GridFunction::sample(
      -1.0, 1.0, 9, [](double x) { return x * x * x - 2 * x + 1; });
  CHECK(c(0.3141) == doctest::Approx(0.3141 * 0.3141 * 0.3141 - 2 * 0.3141 + 1)
                         .epsilon(1e-13));
  CHECK(c.derivative(0.7) == doctest::Approx(3 * 0.49 - 2).epsilon(1e-12));
}

TEST_CASE("quadrature rules") {
  // Boole (1024 intervals), Simpson (1026), Simpson + 3/8 (1025).
  for (std::size_t n : {1025u, 1027u, 1026u}) {
    const GridFunction f =
        GridFunction::sample(0.0, pi, n, [](double x) { return std::sin(x); });
    CHECK(f.integral() == doctest::Approx(2.0).epsilon(1e-11));
  }
  const GridFunction one = GridFunction::constant(0.0, 2 * pi, 2049, 1.0);
  CHECK(one.l2_norm() == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-14));
  const GridFunction zero = GridFunction::constant(0.0, 1.0, 20, 0.0);
  CHECK(zero.l2_norm() == 0.0);
}

TEST_CASE("L2 norm is nonnegative and vanishes only for zero samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(33, 0.0);
    s[static_cast<std::size_t>(trial % 33)] = u(rng);
    const GridFunction f(0.0, 1.0, s);
    CHECK(f.l2_norm() > 0.0);
  }
}

TEST_CASE("restriction, shift and distances") {
  const GridFunction q = GridFunction::sample(0.0, 2 * pi, 2049,
                                              [](double x) { return x; });
  const GridFunction right = q.restrict_to(pi, 2 * pi);
  CHECK(right.size() == 1025);
  CHECK(right.a() == pi);
  CHECK(right(pi) == q(pi));
  CHECK_THROWS(q.restrict_to(1.0, 2.0));

  const GridFunction shifted = (q + 1.5) + (-1.5);
  for (std::size_t k = 0; k < q.size(); k += 97) {
    CHECK(shifted.samples()[k] == doctest::Approx(q.samples()[k]).epsilon(1e-15));
  }
  const GridFunction a = GridFunction::constant(0.0, pi, 257, 1.0);
  const GridFunction b = GridFunction::constant(0.0, pi, 513, 0.0);
  CHECK(l2_distance(a, b) == doctest::Approx(std::sqrt(pi)));
}
