#include "halfinv/sl_direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"
#include "shooting.hpp"

namespace halfinv {

namespace detail {

Shot shoot(const GridFunction& q, double from, double to, double lambda,
           double y0, double dy0, const IntegratorOptions& opts,
           bool track_energy) {
  if (q.size() < opts.min_samples) {
    throw NumericalError(ErrorCode::GridTooCoarse,
                         "potential has " + std::to_string(q.size()) +
                             " samples, integrator requires " +
                             std::to_string(opts.min_samples));
  }
  if (!std::isfinite(lambda) || !std::isfinite(y0) || !std::isfinite(dy0)) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "non-finite initial data or spectral parameter");
  }
  const double length = std::abs(to - from);
  Shot s{y0, dy0, 0, 0.0};
  if (length == 0.0) return s;
  const double per = opts.steps_per_unit * (1.0 + std::sqrt(std::abs(lambda)));
  const auto steps =
      static_cast<long>(std::max(16.0, std::ceil(per * length)));
  const double h = (to - from) / static_cast<double>(steps);
  const double half = 0.5 * h;

  double y = y0;
  double p = dy0;
  double z = 0.0;
  int sign = y > 0.0 ? 1 : (y < 0.0 ? -1 : 0);
  double x = from;
  double g0 = q(x) - lambda;
  for (long k = 0; k < steps; ++k) {
    const double xn = (k + 1 == steps) ? to : from + static_cast<double>(k + 1) * h;
    const double gm = q(x + half) - lambda;
    const double g1 = q(xn) - lambda;

    const double k1y = p;
    const double k1p = g0 * y;
    const double y2 = y + half * k1y;
    const double k2y = p + half * k1p;
    const double k2p = gm * y2;
    const double y3 = y + half * k2y;
    const double k3y = p + half * k2p;
    const double k3p = gm * y3;
    const double y4 = y + h * k3y;
    const double k4y = p + h * k3p;
    const double k4p = g1 * y4;
    if (track_energy) {
      z += h / 6.0 * (y * y + 2.0 * y2 * y2 + 2.0 * y3 * y3 + y4 * y4);
    }
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);

    const int ns = y > 0.0 ? 1 : (y < 0.0 ? -1 : 0);
    if (ns != 0) {
      if (sign != 0 && ns != sign) ++s.sign_changes;
      sign = ns;
    }
    x = xn;
    g0 = g1;
  }
  if (!std::isfinite(y) || !std::isfinite(p)) {
    throw NumericalError(ErrorCode::NonFiniteState,
                         "solution overflowed at lambda = " +
                             std::to_string(lambda));
  }
  s.y = y;
  s.dy = p;
  s.energy = std::abs(z);
  return s;
}

double pruefer_angle(const Shot& s, double travel_sign) {
  const double base = kPi * static_cast<double>(s.sign_changes);
  if (s.y == 0.0) return base + kPi;
  double frac = std::atan2(s.y, travel_sign * s.dy);
  if (frac <= 0.0) frac += kPi;
  return base + frac;
}

long count_from_angle(double theta, double beta) {
  if (!(theta > beta)) return 0;
  return static_cast<long>(std::floor((theta - beta) / kPi)) + 1;
}

long count_below_full(const GridFunction& q, const BoundaryParams& bp,
                      double lambda, const IntegratorOptions& opts) {
  const Shot s = shoot(q, q.a(), q.b(), lambda, 1.0, bp.h, opts);
  return count_from_angle(pruefer_angle(s, 1.0), std::atan2(1.0, -bp.H));
}

double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int i = 0; i < 3; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    if (hi - lo <= 4e-16 * scale) break;
    double x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

double locate_eigenvalue(long n, double rho_guess, double half_width,
                         const std::function<ShotEval(double)>& eval,
                         int max_expansions) {
  double w_lo = half_width;
  double w_hi = half_width;
  double lo = signed_square(rho_guess - w_lo);
  double hi = signed_square(rho_guess + w_hi);
  ShotEval elo = eval(lo);
  for (int k = 0; elo.count > n - 1; ++k) {
    if (k == max_expansions) {
      throw NumericalError(ErrorCode::BracketFailure,
                           "no lower bracket below the eigenvalue", n);
    }
    w_lo *= 2.0;
    lo = signed_square(rho_guess - w_lo);
    elo = eval(lo);
  }
  ShotEval ehi = eval(hi);
  for (int k = 0; ehi.count < n; ++k) {
    if (k == max_expansions) {
      throw NumericalError(ErrorCode::BracketFailure,
                           "no upper bracket above the eigenvalue", n);
    }
    w_hi *= 2.0;
    hi = signed_square(rho_guess + w_hi);
    ehi = eval(hi);
  }
  // Shrink until the bracket holds exactly the n-th eigenvalue.
  for (int it = 0; !(elo.count == n - 1 && ehi.count == n); ++it) {
    if (it > 200 || hi - lo <= 1e-13 * std::max(1.0, std::abs(hi))) {
      throw NumericalError(ErrorCode::BracketFailure,
                           "eigenvalue could not be isolated", n);
    }
    const double mid = 0.5 * (lo + hi);
    const ShotEval em = eval(mid);
    if (em.count >= n) {
      hi = mid;
      ehi = em;
    } else {
      lo = mid;
      elo = em;
    }
  }
  if (elo.value != 0.0 && ehi.value != 0.0 &&
      (elo.value < 0.0) == (ehi.value < 0.0)) {
    throw NumericalError(ErrorCode::BracketFailure,
                         "no sign change across the isolating bracket", n);
  }
  return refine_root([&](double l) { return eval(l).value; }, lo, hi,
                     elo.value, ehi.value);
}

}  // namespace detail

SolutionBoundary integrate_solution(const GridFunction& q, double lambda,
                                    double y0, double dy0, Direction direction,
                                    const IntegratorOptions& opts) {
  const bool fwd = direction == Direction::forward;
  const detail::Shot s = detail::shoot(q, fwd ? q.a() : q.b(),
                                       fwd ? q.b() : q.a(), lambda, y0, dy0,
                                       opts);
  return {s.y, s.dy};
}

SolutionBoundary phi_boundary(const GridFunction& q_left, double h,
                              double lambda, double at,
                              const IntegratorOptions& opts) {
  if (!(at >= q_left.a() && at <= q_left.b())) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "evaluation point outside the potential's interval");
  }
  const detail::Shot s =
      detail::shoot(q_left, q_left.a(), at, lambda, 1.0, h, opts);
  return {s.y, s.dy};
}

SolutionBoundary psi_boundary(const GridFunction& q_right, double H,
                              double lambda, const IntegratorOptions& opts) {
  const detail::Shot s =
      detail::shoot(q_right, q_right.b(), q_right.a(), lambda, 1.0, -H, opts);
  return {s.y, s.dy};
}

double char_value(const GridFunction& q, const BoundaryParams& bp,
                  double lambda, const DirectOptions& opts) {
  const double mid = 0.5 * (q.a() + q.b());
  const auto& io = opts.integrator;
  const detail::Shot phi_mid = detail::shoot(q, q.a(), mid, lambda, 1.0, bp.h, io);
  const detail::Shot phi_end =
      detail::shoot(q, mid, q.b(), lambda, phi_mid.y, phi_mid.dy, io);
  const detail::Shot psi_mid = detail::shoot(q, q.b(), mid, lambda, 1.0, -bp.H, io);

  const double a = phi_mid.dy * psi_mid.y;
  const double b = phi_mid.y * psi_mid.dy;
  const double wronskian = a - b;
  const double boundary = phi_end.dy + bp.H * phi_end.y;
  const double scale = std::max(1.0, std::abs(a) + std::abs(b));
  if (std::abs(wronskian - boundary) > opts.wronskian_tol * scale) {
    throw NumericalError(
        ErrorCode::WronskianMismatch,
        "characteristic function routes disagree at lambda = " +
            std::to_string(lambda) + " (" + std::to_string(wronskian) +
            " vs " + std::to_string(boundary) + ")");
  }
  return wronskian;
}

std::vector<double> eigenvalues_full(const GridFunction& q,
                                     const BoundaryParams& bp, std::size_t n,
                                     const DirectOptions& opts) {
  if (n < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one eigenvalue");
  }
  const double omega = bp.h + bp.H + 0.5 * q.integral();
  const double beta = std::atan2(1.0, -bp.H);
  auto eval = [&](double lambda) {
    const detail::Shot s =
        detail::shoot(q, q.a(), q.b(), lambda, 1.0, bp.h, opts.integrator);
    return detail::ShotEval{
        detail::count_from_angle(detail::pruefer_angle(s, 1.0), beta),
        s.dy + bp.H * s.y};
  };
  std::vector<double> rhos;
  rhos.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double m = 0.5 * static_cast<double>(k - 1);
    const double guess = signed_sqrt(m * m + omega / kPi);
    const double lambda = detail::locate_eigenvalue(
        static_cast<long>(k), guess, 0.25, eval, opts.max_bracket_expansions);
    // Dual-route consistency at the root.
    char_value(q, bp, lambda, opts);
    rhos.push_back(signed_sqrt(lambda));
  }
  return rhos;
}

AuxSpectra aux_spectra(const GridFunction& q_right, double H, std::size_t n,
                       const DirectOptions& opts) {
  if (n < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one eigenvalue");
  }
  const double omega_plus = H + 0.5 * q_right.integral();
  auto shot = [&](double lambda) {
    return detail::shoot(q_right, q_right.b(), q_right.a(), lambda, 1.0, -H,
                         opts.integrator);
  };
  auto dirichlet = [&](double lambda) {
    const detail::Shot s = shot(lambda);
    return detail::ShotEval{
        detail::count_from_angle(detail::pruefer_angle(s, -1.0), kPi), s.y};
  };
  auto neumann = [&](double lambda) {
    const detail::Shot s = shot(lambda);
    return detail::ShotEval{
        detail::count_from_angle(detail::pruefer_angle(s, -1.0), 0.5 * kPi),
        s.dy};
  };
  const double level = 2.0 * omega_plus / kPi;
  AuxSpectra out;
  out.mus.reserve(n);
  out.nus.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double mu_guess = signed_sqrt((kd - 0.5) * (kd - 0.5) + level);
    const double nu_guess = signed_sqrt((kd - 1.0) * (kd - 1.0) + level);
    const auto idx = static_cast<long>(k);
    out.mus.push_back(signed_sqrt(detail::locate_eigenvalue(
        idx, mu_guess, 0.5, dirichlet, opts.max_bracket_expansions)));
    out.nus.push_back(signed_sqrt(detail::locate_eigenvalue(
        idx, nu_guess, 0.5, neumann, opts.max_bracket_expansions)));
  }
  return out;
}

GridFunction apply_shift(const GridFunction& q, double s) { return q + s; }

std::vector<double> shift_spectrum(const std::vector<double>& rhos, double s) {
  std::vector<double> out(rhos.size());
  std::transform(rhos.begin(), rhos.end(), out.begin(), [s](double r) {
    return signed_sqrt(signed_square(r) + s);
  });
  return out;
}

double select_shift(const AuxSpectra& aux) {
  double lambda_min = std::numeric_limits<double>::infinity();
  for (double r : aux.mus) lambda_min = std::min(lambda_min, signed_square(r));
  for (double r : aux.nus) lambda_min = std::min(lambda_min, signed_square(r));
  if (!std::isfinite(lambda_min)) return 0.0;
  return 0.75 - lambda_min;
}

}  // namespace halfinv
