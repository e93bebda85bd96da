#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "halfinv/asymptotics.hpp"
#include "halfinv/errors.hpp"
#include "halfinv/sl_direct.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace halfinv;
using samples::on;
constexpr double pi = std::numbers::pi;

TEST_CASE("decompose_spectrum on model spectra") {
  std::vector<double> free(12), shifted(12);
  for (int n = 1; n <= 12; ++n) {
    free[n - 1] = (n - 1) / 2.0;
    shifted[n - 1] = (n - 1) / 2.0 + 1.0 / (pi * n);
  }
  auto d = decompose_spectrum(free, OmegaMode::estimate());
  CHECK(d.omega == doctest::Approx(0.0));
  for (double k : d.kappas) CHECK(std::abs(k) < 1e-14);

  d = decompose_spectrum(shifted, OmegaMode::exact(1.0));
  CHECK(d.omega == 1.0);
  for (double k : d.kappas) CHECK(std::abs(k) < 1e-13);
  d = decompose_spectrum(shifted, OmegaMode::estimate());
  CHECK(d.omega == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("estimate mode needs eight eigenvalues") {
  const std::vector<double> r{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  try {
    decompose_spectrum(r, OmegaMode::estimate());
    FAIL("expected TooShort");
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::TooShort);
  }
  CHECK_NOTHROW(decompose_spectrum(r, OmegaMode::exact(0.0)));
}

TEST_CASE("recompose") {
  SpectrumDecomposition d{0.0, {0.0, 0.0, 0.0, 0.0}};
  const auto r = recompose(d);
  REQUIRE(r.size() == 4);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.5);
  CHECK(r[2] == 1.0);
  CHECK(r[3] == 1.5);

  SpectrumDecomposition e{pi, {1.0, 0.5, 1.0 / 3.0}};
  const auto s = recompose(e);
  for (int n = 1; n <= 3; ++n) {
    CHECK(s[n - 1] == doctest::Approx((n - 1) / 2.0 + 1.0 / n + 1.0 / (n * n)).epsilon(1e-15));
  }
}

TEST_CASE("exact decomposition round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> r(40);
    for (int n = 1; n <= 40; ++n) r[n - 1] = (n - 1) / 2.0 + u(rng) / n;
    const double w = u(rng) * 10;
    const auto back = recompose(decompose_spectrum(r, OmegaMode::exact(w)));
    for (int n = 0; n < 40; ++n) CHECK(std::abs(back[n] - r[n]) <= 1e-14 * (1 + r[n]));
  }
}

TEST_CASE("omega estimate converges for q = cos x + x/4") {
  // omega = h + H + (1/2) int q from an independent quadrature.
  auto qf = [](double x) { return std::cos(x) + 0.25 * x; };
  const double h = 0.5, H = -0.3;
  const double omega = h + H + 0.5 * oracle::integrate(qf, 0.0, 2 * pi);
  const auto q = on(0.0, 2 * pi, qf);
  const auto rhos = eigenvalues_full(q, {h, H}, 64);
  double prev = 1e9;
  for (std::size_t n : {16u, 32u, 64u}) {
    const auto d = decompose_spectrum(std::span(rhos.data(), n), OmegaMode::estimate());
    const double err = std::abs(d.omega - omega);
    MESSAGE("N=" << n << " omega error " << err);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("decompose_aux") {
  std::vector<double> mu(10), nu(10), mu2(10);
  for (int n = 1; n <= 10; ++n) {
    mu[n - 1] = n - 0.5;
    nu[n - 1] = n - 1.0;
    mu2[n - 1] = n - 0.5 + 2.0 / (pi * n);
  }
  auto d = decompose_aux(mu, nu, 0.0);
  for (int i = 0; i < 10; ++i) {
    CHECK(d.xis[i] == 0.0);
    CHECK(d.taus[i] == 0.0);
  }
  d = decompose_aux(mu2, nu, 2.0);
  for (double x : d.xis) CHECK(std::abs(x) < 1e-13);
  CHECK_THROWS_AS(decompose_aux(mu, std::span(nu.data(), 9), 0.0), NumericalError);
}

TEST_CASE("auxiliary remainders for q = 1, H = 0") {
  const auto q = GridFunction::constant(pi, 2 * pi, 1025, 1.0);
  const double wp = omega_pm(q, 0.0);
  CHECK(wp == doctest::Approx(pi / 2).epsilon(1e-14));
  const auto aux = aux_spectra(q, 0.0, 32);
  const auto d = decompose_aux(aux.mus, aux.nus, wp);
  CHECK(std::isfinite(l2_norm(d.xis)));
  CHECK(std::isfinite(l2_norm(d.taus)));
  // Remainders decay like 1/n for a constant potential.
  CHECK(std::abs(d.xis[31]) < 0.15 * std::abs(d.xis[3]) + 1e-6);
  CHECK(std::abs(d.taus[31]) < 0.15 * std::abs(d.taus[3]) + 1e-6);
}

TEST_CASE("omega_pm") {
  CHECK(omega_pm(GridFunction::constant(pi, 2 * pi, 65, 0.0), 2.0) == 2.0);
  CHECK(omega_pm(GridFunction::constant(pi, 2 * pi, 65, 0.7), 0.0) ==
        doctest::Approx(0.7 * pi / 2).epsilon(1e-14));
}

TEST_CASE("omega_minus + omega_plus = omega") {
  std::mt19937_64 rng(5);
  const auto p = samples::random_in_ball(rng, 3.0);
  const auto q = on(0.0, 2 * pi, p.q);
  const double wm = omega_pm(q.restrict_to(0.0, pi), p.h);
  const double wp = omega_pm(q.restrict_to(pi, 2 * pi), p.H);
  const double omega = p.h + p.H + 0.5 * oracle::integrate(p.q, 0.0, 2 * pi);
  CHECK(std::abs(wm + wp - omega) < 1e-10);
  // omega from the exact decomposition equals the supplied value and
  // reproduces the spectrum.
  const auto rhos = eigenvalues_full(q, {p.h, p.H}, 12);
  const auto d = decompose_spectrum(rhos, OmegaMode::exact(wm + wp));
  CHECK(d.omega == wm + wp);
  const auto back = recompose(d);
  for (int i = 0; i < 12; ++i) CHECK(std::abs(back[i] - rhos[i]) < 1e-13);
}

TEST_CASE("mixed_distance") {
  const auto q1 = GridFunction::constant(pi, 2 * pi, 257, 0.0);
  const auto q2 = GridFunction::constant(pi, 2 * pi, 257, 1.0);
  std::vector<double> r(10);
  for (int n = 1; n <= 10; ++n) r[n - 1] = (n - 1) / 2.0 + 0.1 / n;
  const MixedData s1(q1, 0.0, r), s1b(q1, 1.0, r), s2(q2, 0.0, r);
  CHECK(mixed_distance(s1, s1) == 0.0);
  CHECK(mixed_distance(s1, s1b) == doctest::Approx(1.0));
  CHECK(mixed_distance(s1, s2) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  auto random_data = [&] {
    std::vector<double> rr(16);
    for (int n = 1; n <= 16; ++n) rr[n - 1] = (n - 1) / 2.0 + 0.2 / n + 0.3 * u(rng) / n;
    return MixedData(on(pi, 2 * pi, samples::random_potential(rng, 1.0), 256), u(rng), rr);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_data(), b = random_data(), c = random_data();
    const double ab = mixed_distance(a, b), ba = mixed_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
    CHECK(mixed_distance(a, c) <= ab + mixed_distance(b, c) + 1e-12);
  }
}

TEST_CASE("MixedData validation") {
  const auto q = GridFunction::constant(pi, 2 * pi, 65, 0.0);
  CHECK_THROWS_AS(MixedData(q, 0.0, {0.0, 1.0, 0.5}), NumericalError);
  CHECK_THROWS_AS(MixedData(q, NAN, {0.0}), NumericalError);
  CHECK_THROWS_AS(MixedData(q, 0.0, {0.0, INFINITY}), NumericalError);
}

TEST_CASE("ball norms") {
  CHECK(ball_norm(GridFunction::constant(0.0, 2 * pi, 65, 0.0), 0.0, 0.0) == 0.0);
  CHECK(ball_norm(GridFunction::constant(0.0, 2 * pi, 65, 1.0), 1.0, -1.0) ==
        doctest::Approx(std::sqrt(2 * pi) + 2).epsilon(1e-13));
}

TEST_CASE("spectra of P_5 samples stay in a common B_Omega ball") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = samples::random_in_ball(rng, 5.0);
    const auto q = on(0.0, 2 * pi, p.q, 256);
    REQUIRE(ball_norm(q, p.h, p.H) <= 5.0);
    const double omega = omega_pm(q, p.h + p.H);
    const auto rhos = eigenvalues_full(q, {p.h, p.H}, 24);
    worst = std::max(worst, b_omega_norm(decompose_spectrum(rhos, OmegaMode::exact(omega))));
  }
  MESSAGE("Omega(5) estimate: " << worst);
  CHECK(worst < 8.0);
}

TEST_CASE("auxiliary data depend Lipschitz-continuously on (q, H)") {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p1 = samples::random_in_ball(rng, 5.0);
    const auto p2 = samples::random_in_ball(rng, 5.0);
    const auto q1 = on(pi, 2 * pi, p1.q, 256);
    const auto q2 = on(pi, 2 * pi, p2.q, 256);
    const auto a1 = aux_spectra(q1, p1.H, 24);
    const auto a2 = aux_spectra(q2, p2.H, 24);
    const auto d1 = decompose_aux(a1.mus, a1.nus, omega_pm(q1, p1.H));
    const auto d2 = decompose_aux(a2.mus, a2.nus, omega_pm(q2, p2.H));
    const double lhs = std::abs(d1.omega_plus - d2.omega_plus) +
                       l2_distance(d1.xis, d2.xis) + l2_distance(d1.taus, d2.taus);
    const double rhs = l2_distance(q1, q2) + std::abs(p1.H - p2.H);
    worst = std::max(worst, lhs / rhs);
  }
  MESSAGE("aux Lipschitz ratio: " << worst);
  CHECK(worst < 4.0);
}
