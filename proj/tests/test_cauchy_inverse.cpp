#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "halfinv/asymptotics.hpp"
#include "halfinv/cauchy_inverse.hpp"
#include "halfinv/errors.hpp"
#include "halfinv/sl_direct.hpp"
#include "halfinv/spectral_functions.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace halfinv;
using samples::on;
constexpr double pi = std::numbers::pi;

namespace {

CauchyData zero_data(double omega_minus = 0.0) {
  return {KernelFunction::zero(), KernelFunction::zero(), omega_minus};
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
  return l2_distance(a, b) / b.l2_norm();
}

const auto cos_q = [](double x) { return std::cos(x); };

}  // namespace

TEST_CASE("phi_from_cauchy in the free case") {
  auto p = phi_from_cauchy(zero_data(), 0.25);
  CHECK(std::abs(p.phi.value) < 1e-15);
  CHECK(p.phi.derivative == doctest::Approx(-0.5).epsilon(1e-14));
  p = phi_from_cauchy(zero_data(1.0), 0.25);
  CHECK(p.phi.value == doctest::Approx(2.0).epsilon(1e-14));
  // rho -> 0: sin(rho pi)/rho -> pi
  p = phi_from_cauchy(zero_data(1.0), 0.0);
  CHECK(p.phi.value == doctest::Approx(1.0 + pi).epsilon(1e-14));
  CHECK(p.phi.derivative == doctest::Approx(1.0).epsilon(1e-14));
  // analytic lambda-derivative against a central difference
  for (double lam : {-2.0, 0.0, 0.3, 7.7}) {
    const double d = 1e-5;
    const double fd = (phi_from_cauchy(zero_data(0.7), lam + d).phi.derivative -
                       phi_from_cauchy(zero_data(0.7), lam - d).phi.derivative) / (2 * d);
    CHECK(phi_from_cauchy(zero_data(0.7), lam).dphi_prime_dlambda ==
          doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("cauchy_from_potential examples") {
  const auto z = cauchy_from_potential(GridFunction::constant(0, pi, 513, 0.0), 0.0, 16);
  CHECK(z.omega_minus == 0.0);
  CHECK(z.K.l2_norm() < 1e-7);
  CHECK(z.K0.l2_norm() < 1e-7);
  const auto c = cauchy_from_potential(GridFunction::constant(0, pi, 513, 0.8), 0.2, 8);
  CHECK(c.omega_minus == doctest::Approx(0.2 + 0.8 * pi / 2).epsilon(1e-14));
}

TEST_CASE("phi from Cauchy data reproduces direct integration") {
  const auto q = on(0, pi, cos_q);
  const auto cd = cauchy_from_potential(q, 0.5, 256);
  double worst = 0.0, worst_w = 0.0;
  for (double r = 0.0; r <= 12.0; r += 0.13) {
    const auto direct = phi_boundary(q, 0.5, r * r, pi);
    const auto p = phi_from_cauchy(cd, r * r);
    worst = std::max({worst, std::abs(p.phi.value - direct.value),
                      std::abs(p.phi.derivative - direct.derivative)});
    if (std::abs(direct.value) > 0.1) {
      worst_w = std::max(worst_w, std::abs(weyl_value(cd, r * r) -
                                           direct.derivative / direct.value));
    }
  }
  MESSAGE("phi round trip error " << worst << ", Weyl " << worst_w);
  CHECK(worst <= 1e-6);
  CHECK(worst_w <= 1e-6);
}

TEST_CASE("weyl_value") {
  CHECK(std::abs(weyl_value(zero_data(), 1.0)) < 1e-15);
  try {
    weyl_value(zero_data(), 0.25);
    FAIL("expected PoleProximity");
  } catch (const NumericalError& e) {
    CHECK(e.code() == ErrorCode::PoleProximity);
  }
}

TEST_CASE("eigen data of model problems") {
  const auto ed = eigen_data_from_cauchy(zero_data(), 12);
  REQUIRE(ed.size() == 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(std::abs(ed.lambdas[n - 1] - (n - 1.0) * (n - 1.0)) < 1e-10);
    CHECK(ed.alphas[n - 1] == doctest::Approx(n == 1 ? pi : pi / 2).epsilon(1e-10));
  }
  const double c = 0.6;
  const auto cd = cauchy_from_potential(GridFunction::constant(0, pi, 1025, c), 0.0, 128);
  const auto ec = eigen_data_from_cauchy(cd, 16);
  const auto ep = eigen_data_from_potential(GridFunction::constant(0, pi, 1025, c), 0.0, 16);
  for (int n = 1; n <= 16; ++n) {
    CHECK(std::abs(ec.lambdas[n - 1] - ((n - 1.0) * (n - 1.0) + c)) < 1e-6);
    CHECK(ec.alphas[n - 1] == doctest::Approx(n == 1 ? pi : pi / 2).epsilon(1e-6));
    CHECK(std::abs(ep.lambdas[n - 1] - ((n - 1.0) * (n - 1.0) + c)) < 1e-8);
    CHECK(ep.alphas[n - 1] == doctest::Approx(n == 1 ? pi : pi / 2).epsilon(1e-8));
  }
  // A deep well produces a negative eigenvalue.
  const auto deep = cauchy_from_potential(GridFunction::constant(0, pi, 1025, -3.0), 0.0, 128);
  const auto ed2 = eigen_data_from_cauchy(deep, 4);
  CHECK(ed2.lambdas[0] == doctest::Approx(-3.0).epsilon(1e-4));
}

TEST_CASE("norming constants satisfy the Lagrange identity") {
  const auto q = on(0, pi, cos_q);
  const auto cd = cauchy_from_potential(q, 0.5, 128);
  const auto ed = eigen_data_from_cauchy(cd, 24);
  double worst = 0.0;
  for (std::size_t i = 0; i < ed.size(); ++i) {
    const auto s = oracle::solve(cos_q, ed.lambdas[i], 0.0, pi, 1.0, 0.5);
    worst = std::max(worst, std::abs(ed.alphas[i] - s[2]) / s[2]);
  }
  MESSAGE("Lagrange identity relative error " << worst);
  CHECK(worst <= 1e-6);
}

TEST_CASE("non-positive norming constants are reported") {
  // Cauchy data of no real potential: phi(pi) changes sign between zeros of
  // phi'(pi) in the wrong order.
  auto k0 = KernelFunction::half_sine_series(std::vector<double>{0.0, 0.0, 40.0});
  const CauchyData bad{KernelFunction::zero(), k0, 0.0};
  CHECK_THROWS_AS(eigen_data_from_cauchy(bad, 6), NumericalError);
}

TEST_CASE("Gelfand-Levitan sanity") {
  SUBCASE("reference data give zero") {
    EigenData ed;
    for (int n = 1; n <= 16; ++n) {
      ed.lambdas.push_back((n - 1.0) * (n - 1.0));
      ed.alphas.push_back(n == 1 ? pi : pi / 2);
    }
    const auto r = gelfand_levitan_reconstruct(ed, 256);
    CHECK(r.h == 0.0);
    for (double v : r.q.samples()) CHECK(v == 0.0);
  }
  SUBCASE("shifted free data give a constant") {
    const double c = 1.0;
    EigenData ed;
    for (int n = 1; n <= 32; ++n) {
      ed.lambdas.push_back((n - 1.0) * (n - 1.0) + c);
      ed.alphas.push_back(n == 1 ? pi : pi / 2);
    }
    ed.reference_level = c;
    auto r = gelfand_levitan_reconstruct(ed, 256);
    const auto one = GridFunction::constant(0, pi, 256, c);
    MESSAGE("constant, matched reference: " << rel_l2(r.q, one) << " h " << r.h);
    CHECK(rel_l2(r.q, one) <= 0.02);
    CHECK(std::abs(r.h) <= 1e-2);
    ed.reference_level = 0.0;
    r = gelfand_levitan_reconstruct(ed, 256);
    MESSAGE("constant, free reference: " << rel_l2(r.q, one) << " h " << r.h);
  }
}

TEST_CASE("round trip through Cauchy data for q = cos x, h = 0.5") {
  const auto q = on(0, pi, cos_q);
  double prev = 1e9;
  for (std::size_t n : {16u, 32u, 64u}) {
    const auto cd = cauchy_from_potential(q, 0.5, 2 * n);
    const auto ed = eigen_data_from_cauchy(cd, n);
    const auto r = gelfand_levitan_reconstruct(ed, 512);
    const auto truth = on(0, pi, cos_q, 511);
    const double err = rel_l2(r.q, truth);
    MESSAGE("N=" << n << " rel L2 " << err << " h err " << std::abs(r.h - 0.5));
    CHECK(err <= prev);
    prev = err;
    if (n == 64) {
      CHECK(err <= 0.05);
      CHECK(std::abs(r.h - 0.5) <= 1e-2);
    }
  }
}

TEST_CASE("shift equivariance of the reconstruction") {
  const auto q = on(0, pi, cos_q);
  const auto ed = eigen_data_from_potential(q, 0.5, 32);
  const auto r0 = gelfand_levitan_reconstruct(ed, 256);
  for (double s : {0.75, -0.4, 2.5}) {
    EigenData shifted = ed;
    for (auto& l : shifted.lambdas) l += s;
    shifted.reference_level += s;
    const auto r1 = gelfand_levitan_reconstruct(shifted, 256);
    const double err = l2_distance(r1.q, r0.q + s);
    MESSAGE("shift " << s << ": " << err << " h " << std::abs(r1.h - r0.h));
    CHECK(err <= 1e-6);
    CHECK(std::abs(r1.h - r0.h) <= 1e-6);
  }
}

TEST_CASE("reconstruction is local") {
  SUBCASE("kernel values beyond 2 x0 do not influence q on (0, x0)") {
    auto f1 = [](double u) { return 0.1 * std::cos(u) - 0.05 * u; };
    auto f2 = [&](double u) { return u <= pi ? f1(u) : f1(u) + 0.3 * std::sin(3 * u); };
    const auto a = gelfand_levitan_from_f(f1, 257);
    const auto b = gelfand_levitan_from_f(f2, 257);
    const auto sa = a.q.samples(), sb = b.q.samples();
    // Node slopes of the spline couple neighbouring nodes, so compare well
    // inside (0, pi/2).
    double worst = 0.0;
    for (std::size_t j = 0; j <= 100; ++j) worst = std::max(worst, std::abs(sa[j] - sb[j]));
    CHECK(worst <= 1e-8);
    CHECK(a.h == b.h);
  }
  SUBCASE("potentials agreeing on (0, x0)") {
    const double x0 = pi / 2;
    auto bump = [&](double x) { return x <= x0 ? 0.0 : std::pow((x - x0) * (pi - x), 4); };
    auto q1f = [](double x) { return std::cos(x); };
    auto q2f = [&](double x) { return std::cos(x) + 2.0 * bump(x); };
    const auto q1 = on(0, pi, q1f), q2 = on(0, pi, q2f);
    const auto e1 = eigen_data_from_potential(q1, 0.5, 48);
    const auto e2 = eigen_data_from_potential(q2, 0.5, 48);
    const auto r1 = gelfand_levitan_reconstruct(e1, 257);
    const auto r2 = gelfand_levitan_reconstruct(e2, 257);
    const auto d = r1.q - r2.q;
    const double inner = d.restrict_to(0.0, pi * 0.375).l2_norm();
    const double outer = d.restrict_to(x0, pi).l2_norm();
    const double truth_outer = (q1 - q2).restrict_to(x0, pi).l2_norm();
    MESSAGE("difference on (0, 0.75 x0): " << inner << ", on (x0, pi): " << outer
                                          << " (true " << truth_outer << ")");
    CHECK(inner <= 0.05 * truth_outer);
  }
}

TEST_CASE("reconstruction is Lipschitz in the Cauchy data") {
  std::mt19937_64 rng(123);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto draw = [&] {
      auto p = samples::random_in_ball(rng, 3.0);
      return std::pair{on(0, pi, p.q, 512), p.h};
    };
    const auto [qa, ha] = draw();
    const auto [qb, hb] = draw();
    const auto ca = cauchy_from_potential(qa, ha, 64);
    const auto cb = cauchy_from_potential(qb, hb, 64);
    const auto ra = gelfand_levitan_reconstruct(eigen_data_from_cauchy(ca, 32), 256);
    const auto rb = gelfand_levitan_reconstruct(eigen_data_from_cauchy(cb, 32), 256);
    const double out = l2_distance(ra.q, rb.q) + std::abs(ra.h - rb.h);
    const double in = l2_distance(ca.K, cb.K) + l2_distance(ca.K0, cb.K0) +
                      std::abs(ca.omega_minus - cb.omega_minus);
    worst = std::max(worst, out / in);
  }
  MESSAGE("reconstruction Lipschitz constant: " << worst);
  CHECK(worst < 10.0);
}

TEST_CASE("closed-form Cauchy data of a constant potential") {
  for (double c : {1.3, -0.7, 0.0, 4.0}) {
    const auto cd = constant_potential_cauchy(c);
    CHECK(cd.omega_minus == doctest::Approx(c * pi / 2).epsilon(1e-15));
    for (double r : {0.0, 0.3, 1.7, 2.9, 7.25}) {
      const auto p = phi_from_cauchy(cd, r * r);
      const auto e = constant_potential_phi(c, r * r);
      CHECK(std::abs(p.phi.value - e.value) < 1e-11);
      CHECK(std::abs(p.phi.derivative - e.derivative) < 1e-10);
    }
    // Against the sampled forward map.
    if (c != 0.0) {
      const auto num = cauchy_from_potential(GridFunction::constant(0, pi, 1025, c), 0.0, 256);
      CHECK(l2_distance(num.K, cd.K) < 2e-3 * (1 + cd.K.l2_norm()));
      CHECK(l2_distance(num.K0, cd.K0) < 2e-3 * (1 + cd.K0.l2_norm()));
    }
  }
  const auto z = constant_potential_phi(0.0, 2.25);
  CHECK(z.value == doctest::Approx(std::cos(1.5 * pi)).scale(1));
}
