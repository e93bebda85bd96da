#include "halfinv/cauchy_inverse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "halfinv/asymptotics.hpp"
#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"
#include "shooting.hpp"

namespace halfinv {

namespace {

double weighted_integral(const KernelFunction& k,
                         const std::function<double(double)>& w) {
  const GridFunction& g = k.values();
  const auto s = g.samples();
  std::vector<double> prod(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) prod[i] = s[i] * w(g.node(i));
  return integrate_uniform(prod, g.step());
}

double phi_prime_at(const CauchyData& cd, double lambda) {
  return -rho_sin_rho(lambda, kPi) + cd.omega_minus * cos_rho(lambda, kPi) +
         weighted_integral(cd.K, [&](double t) { return cos_rho(lambda, t); });
}

double reference_alpha(std::size_t i) { return i == 0 ? kPi : 0.5 * kPi; }

void validate(const EigenData& ed) {
  if (ed.lambdas.empty() || ed.lambdas.size() != ed.alphas.size()) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "eigen data needs equal, nonzero numbers of eigenvalues and norming constants");
  }
  for (std::size_t i = 0; i < ed.size(); ++i) {
    if (!std::isfinite(ed.lambdas[i]) || !std::isfinite(ed.alphas[i])) {
      throw NumericalError(ErrorCode::InvalidArgument, "eigen data not finite",
                           static_cast<long>(i + 1));
    }
    if (i > 0 && !(ed.lambdas[i] > ed.lambdas[i - 1])) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "eigenvalues must be strictly increasing",
                           static_cast<long>(i + 1));
    }
    if (!(ed.alphas[i] > 0.0)) {
      throw NumericalError(ErrorCode::NonPositiveNorming,
                           "norming constants must be positive",
                           static_cast<long>(i + 1));
    }
  }
}

}  // namespace

CauchyPhi phi_from_cauchy(const CauchyData& cd, double lambda) {
  const double w = cd.omega_minus;
  CauchyPhi out{};
  out.phi.value = cos_rho(lambda, kPi) + w * sin_over_rho(lambda, kPi) +
                  weighted_integral(cd.K0, [&](double t) { return sin_over_rho(lambda, t); });
  out.phi.derivative = phi_prime_at(cd, lambda);
  out.dphi_prime_dlambda =
      -drho_sin_rho(lambda, kPi) + w * dcos_rho(lambda, kPi) +
      weighted_integral(cd.K, [&](double t) { return dcos_rho(lambda, t); });
  return out;
}

CauchyData constant_potential_cauchy(double c, std::size_t grid) {
  // S(z) and S'(z) = sum z^k/(k!(k+2)!)
  auto series = [](double z, int shift) {
    double term = 1.0 / (shift == 1 ? 1.0 : 2.0), sum = term;
    for (int k = 1; k < 200; ++k) {
      term *= z / (static_cast<double>(k) * static_cast<double>(k + shift));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  };
  const double a = 0.5 * c * kPi;
  auto z = [&](double t) { return 0.25 * c * (kPi * kPi - t * t); };
  auto K = GridFunction::sample(0.0, kPi, grid, [&](double t) {
    return 0.5 * c * series(z(t), 1) + a * a * series(z(t), 2);
  });
  auto K0 = GridFunction::sample(0.0, kPi, grid, [&](double t) {
    return 0.5 * a * c * t * series(z(t), 2);
  });
  return {KernelFunction(std::move(K)), KernelFunction(std::move(K0)), a};
}

SolutionBoundary constant_potential_phi(double c, double lambda) {
  return {cos_rho(lambda - c, kPi), -rho_sin_rho(lambda - c, kPi)};
}

double weyl_value(const CauchyData& cd, double lambda, double tol) {
  const CauchyPhi p = phi_from_cauchy(cd, lambda);
  if (!(std::abs(p.phi.value) >= tol)) {
    throw NumericalError(ErrorCode::PoleProximity,
                         "phi(pi) vanishes at lambda = " + std::to_string(lambda));
  }
  return p.phi.derivative / p.phi.value;
}

EigenData eigen_data_from_cauchy(const CauchyData& cd, std::size_t n) {
  if (n < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one eigenvalue");
  }
  EigenData ed;
  ed.reference_level = 2.0 * cd.omega_minus / kPi;

  // Below the spectrum phi grows like cosh and phi'/phi ~ sqrt(-lambda).
  double lo = std::min(-1.0, ed.reference_level - 1.0);
  int tries = 0;
  for (;; ++tries) {
    const CauchyPhi p = phi_from_cauchy(cd, lo);
    if (p.phi.value > 0.0 && p.phi.derivative > 0.5 * std::sqrt(-lo) * p.phi.value) break;
    if (tries == 60) {
      throw NumericalError(ErrorCode::BracketFailure,
                           "no lower bound for the Neumann spectrum", 1);
    }
    lo = 2.0 * lo - 1.0;
  }

  // Scan in the signed root with a step well below the zero spacing.
  constexpr double kStep = 1.0 / 16.0;
  const double r_end = signed_sqrt(lo) + static_cast<double>(n) + 16.0 +
                       std::abs(ed.reference_level);
  double r = signed_sqrt(lo);
  double lam_prev = lo;
  double g_prev = phi_prime_at(cd, lo);
  auto g = [&](double lam) { return phi_prime_at(cd, lam); };
  while (ed.lambdas.size() < n) {
    r += kStep;
    if (r > r_end) {
      throw NumericalError(ErrorCode::BracketFailure,
                           "zero of phi'(pi) not found",
                           static_cast<long>(ed.lambdas.size() + 1));
    }
    const double lam = signed_square(r);
    const double gv = g(lam);
    if (gv == 0.0 || (gv < 0.0) != (g_prev < 0.0)) {
      const double root =
          gv == 0.0 ? lam : detail::refine_root(g, lam_prev, lam, g_prev, gv);
      const CauchyPhi p = phi_from_cauchy(cd, root);
      const double alpha = -p.phi.value * p.dphi_prime_dlambda;
      const long idx = static_cast<long>(ed.lambdas.size() + 1);
      if (!(alpha > 0.0)) {
        throw NumericalError(ErrorCode::NonPositiveNorming,
                             "norming constant " + std::to_string(alpha), idx);
      }
      ed.lambdas.push_back(root);
      ed.alphas.push_back(alpha);
      if (gv == 0.0) {
        r += kStep;
        lam_prev = signed_square(r);
        g_prev = g(lam_prev);
        continue;
      }
    }
    lam_prev = lam;
    g_prev = gv;
  }
  return ed;
}

EigenData eigen_data_from_potential(const GridFunction& q_left, double h,
                                    std::size_t n, const DirectOptions& opts) {
  if (n < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one eigenvalue");
  }
  const double level = 2.0 * omega_pm(q_left, h) / kPi;
  auto eval = [&](double lambda) {
    const detail::Shot s =
        detail::shoot(q_left, q_left.a(), q_left.b(), lambda, 1.0, h, opts.integrator);
    return detail::ShotEval{
        detail::count_from_angle(detail::pruefer_angle(s, 1.0), 0.5 * kPi), s.dy};
  };
  EigenData ed;
  ed.reference_level = level;
  for (std::size_t k = 1; k <= n; ++k) {
    const double m = static_cast<double>(k - 1);
    const double lambda = detail::locate_eigenvalue(
        static_cast<long>(k), signed_sqrt(m * m + level), 0.5, eval,
        opts.max_bracket_expansions);
    const detail::Shot s = detail::shoot(q_left, q_left.a(), q_left.b(), lambda,
                                         1.0, h, opts.integrator, true);
    ed.lambdas.push_back(lambda);
    ed.alphas.push_back(s.energy);
  }
  return ed;
}

CauchyData cauchy_from_potential(const GridFunction& q_left, double h,
                                 std::size_t m_max, std::size_t grid,
                                 const IntegratorOptions& opts) {
  if (m_max < 4) {
    throw NumericalError(ErrorCode::InvalidArgument, "m_max must be at least 4");
  }
  const double w = omega_pm(q_left, h);
  const double end = q_left.b();
  std::vector<double> cos_moments(m_max + 1), sin_moments(m_max);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double r = static_cast<double>(m);
    const double alt = (m % 2 == 0) ? 1.0 : -1.0;
    cos_moments[m] = phi_boundary(q_left, h, r * r, end, opts).derivative - w * alt;
  }
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double r = static_cast<double>(m) - 0.5;
    const double alt = (m % 2 == 1) ? 1.0 : -1.0;
    sin_moments[m - 1] = r * phi_boundary(q_left, h, r * r, end, opts).value - w * alt;
  }
  return {KernelFunction::cosine_series(cos_moments, grid),
          KernelFunction::half_sine_series(sin_moments, grid), w};
}

Reconstruction gelfand_levitan_from_f(const std::function<double(double)>& f,
                                      std::size_t grid_size) {
  if (grid_size < GridFunction::kMinSamples) {
    throw NumericalError(ErrorCode::GridTooCoarse,
                         "reconstruction grid needs at least 8 nodes");
  }
  const std::size_t J = grid_size - 1;
  const double step = kPi / static_cast<double>(J);
  std::vector<double> fu(2 * J + 1);
  for (std::size_t k = 0; k <= 2 * J; ++k) fu[k] = f(static_cast<double>(k) * step);
  for (double v : fu) {
    if (!std::isfinite(v)) {
      throw NumericalError(ErrorCode::SingularGLSystem, "kernel F is not finite");
    }
  }
  auto F = [&](std::size_t a, std::size_t b) {
    return fu[a + b] + fu[a > b ? a - b : b - a];
  };

  // diag[j] = K(x_j, x_j)
  std::vector<double> diag(grid_size);
  std::atomic<std::size_t> next{1};
  std::atomic<bool> failed{false};
  diag[0] = -F(0, 0);
  auto worker = [&] {
    Eigen::MatrixXd A;
    Eigen::VectorXd rhs, sw;
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j > J || failed.load()) return;
      const auto n = static_cast<Eigen::Index>(j + 1);
      sw.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const bool end = i == 0 || i == n - 1;
        sw[i] = std::sqrt(end ? 0.5 * step : step);
      }
      A.resize(n, n);
      rhs.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k <= i; ++k) {
          const double v = sw[i] * sw[k] *
                           F(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
          A(i, k) = v;
          A(k, i) = v;
        }
        A(i, i) += 1.0;
        rhs[i] = -sw[i] * F(j, static_cast<std::size_t>(i));
      }
      Eigen::LLT<Eigen::MatrixXd> llt(A);
      if (llt.info() != Eigen::Success) {
        failed = true;
        return;
      }
      const Eigen::VectorXd y = llt.solve(rhs);
      diag[j] = y[n - 1] / sw[n - 1];
    }
  };
  const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < hw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed) {
    throw NumericalError(ErrorCode::SingularGLSystem,
                         "Nystrom matrix is not positive definite");
  }
  for (double v : diag) {
    if (!std::isfinite(v)) {
      throw NumericalError(ErrorCode::SingularGLSystem, "kernel diagonal not finite");
    }
  }
  const GridFunction g(0.0, kPi, diag);
  std::vector<double> q(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) q[j] = 2.0 * g.node_slope(j);
  return {GridFunction(0.0, kPi, std::move(q)), diag[0]};
}

Reconstruction gelfand_levitan_reconstruct(const EigenData& ed,
                                           std::size_t grid_size) {
  validate(ed);
  // Relative to the constant reference c the data are those of q - c with the
  // free reference, whose tail (n-1)^2 matches the shifted eigenvalues.
  const double c = ed.reference_level;
  const std::size_t n = ed.size();
  auto f = [&](double u) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = static_cast<double>(i);
      s += 0.5 * (cos_rho(ed.lambdas[i] - c, u) / ed.alphas[i] -
                  std::cos(m * u) / reference_alpha(i));
    }
    return s;
  };
  Reconstruction r = gelfand_levitan_from_f(f, grid_size);
  r.q = r.q + c;
  return r;
}

}  // namespace halfinv
