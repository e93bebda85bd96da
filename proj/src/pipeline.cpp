#include "halfinv/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"

namespace halfinv {

namespace {

template <class F>
auto step(int k, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NumericalError& e) {
    throw e.with_step(k);
  }
}

double moment_residual(const KernelFunction& f, const std::vector<double>& freqs,
                       TrigKind kind, const std::vector<double>& target) {
  const auto m = moments_of(f, freqs, kind);
  return l2_distance(m, target);
}

}  // namespace

void SolveConfig::validate() const {
  if (n_eigs < 8) {
    throw NumericalError(ErrorCode::InvalidArgument, "n_eigs must be at least 8");
  }
  if (grid_size < 64) {
    throw NumericalError(ErrorCode::InvalidArgument, "grid_size must be at least 64");
  }
  if (resolved_n_aux() < 4) {
    throw NumericalError(ErrorCode::InvalidArgument, "n_aux must be at least 4");
  }
  if (resolved_n_gl() < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "n_gl must be positive");
  }
  if (shift_policy.kind == ShiftPolicy::Kind::fixed && !std::isfinite(shift_policy.value)) {
    throw NumericalError(ErrorCode::InvalidArgument, "shift must be finite");
  }
}

double omega_of(const GridFunction& q, double h, double H) {
  return h + H + 0.5 * q.integral();
}

RightHandSides compute_rhs(const MixedData& S, const ZeroProductFunction& delta,
                           const std::vector<double>& mus,
                           const std::vector<double>& nus, double omega_minus,
                           double floor, const IntegratorOptions& opts) {
  RightHandSides out;
  out.k0.reserve(mus.size());
  out.k.reserve(nus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double mu = mus[i];
    if (!(mu > 0.0)) {
      throw NumericalError(ErrorCode::InvalidArgument, "mu_n must be positive",
                           static_cast<long>(i + 1));
    }
    const double lam = mu * mu;
    const double dpsi = psi_boundary(S.q_right(), S.H(), lam, opts).derivative;
    if (!(std::abs(dpsi) / mu >= floor)) {
      throw NumericalError(ErrorCode::DenominatorUnderflow,
                           "psi'(pi, mu_n) / mu_n is below the floor",
                           static_cast<long>(i + 1));
    }
    out.k0.push_back(-mu * (std::cos(mu * kPi) + omega_minus * std::sin(mu * kPi) / mu +
                            delta_from_zeros(delta, lam) / dpsi));
  }
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const double nu = nus[i];
    const double lam = signed_square(nu);
    const double psi = psi_boundary(S.q_right(), S.H(), lam, opts).value;
    if (!(std::abs(psi) >= floor)) {
      throw NumericalError(ErrorCode::DenominatorUnderflow,
                           "psi(pi, nu_n) is below the floor",
                           static_cast<long>(i + 1));
    }
    out.k.push_back(rho_sin_rho(lam, kPi) - omega_minus * cos_rho(lam, kPi) +
                    delta_from_zeros(delta, lam) / psi);
  }
  return out;
}

SolveReport solve_half_inverse(const MixedData& S, const SolveConfig& cfg) {
  const std::size_t N = cfg.n_eigs;
  const std::size_t n_aux = cfg.resolved_n_aux();
  const std::size_t n_gl = cfg.resolved_n_gl();
  step(1, [&] {
    cfg.validate();
    if (S.spectrum().size() < N) {
      throw NumericalError(ErrorCode::TooShort,
                           "mixed data hold " + std::to_string(S.spectrum().size()) +
                               " eigenvalues, configuration needs " + std::to_string(N));
    }
  });
  DirectOptions dopts;
  dopts.wronskian_tol = cfg.tolerances.wronskian;
  const std::vector<double> spectrum(S.spectrum().begin(), S.spectrum().begin() + N);

  // Step 1: omega (unshifted), validated on the given spectrum.
  const SpectrumDecomposition d1 = step(1, [&] { return decompose_spectrum(spectrum, cfg.omega_mode); });

  // Step 2: auxiliary spectra, shift, omega_plus, omega_minus.
  const AuxSpectra aux = step(2, [&] { return aux_spectra(S.q_right(), S.H(), n_aux, dopts); });
  const double s = cfg.shift_policy.kind == ShiftPolicy::Kind::automatic
                       ? select_shift(aux)
                       : cfg.shift_policy.value;
  const GridFunction q_right_s = apply_shift(S.q_right(), s);
  const std::vector<double> spectrum_s = shift_spectrum(spectrum, s);
  const std::vector<double> mus = shift_spectrum(aux.mus, s);
  const std::vector<double> nus = shift_spectrum(aux.nus, s);
  double omega_s;
  if (cfg.omega_mode.kind == OmegaMode::Kind::exact) {
    omega_s = d1.omega + s * kPi;
  } else {
    // Estimating on the canonically shifted spectrum keeps the result
    // independent of any shift already present in the data.
    omega_s = step(1, [&] { return decompose_spectrum(spectrum_s, OmegaMode::estimate()).omega; });
  }
  const double omega_plus_s = omega_pm(q_right_s, S.H());
  const double omega_minus_s = omega_s - omega_plus_s;
  const MixedData S_s = step(2, [&] { return MixedData(q_right_s, S.H(), spectrum_s); });
  const ZeroProductFunction delta =
      step(1, [&] { return ZeroProductFunction(spectrum_s, omega_s); });

  // Step 3: right-hand sides of the moment problems.
  const RightHandSides rhs = step(3, [&] {
    return compute_rhs(S_s, delta, mus, nus, omega_minus_s,
                       cfg.tolerances.denominator_floor, dopts.integrator);
  });

  // Step 4: K0 from sine moments at mu, K from cosine moments at nu. The
  // closed-form kernels of the constant potential with the same omega_minus
  // are subtracted first; only the remainder is expanded in the truncated
  // dual basis.
  const double level = 2.0 * omega_minus_s / kPi;
  const CauchyData ref = constant_potential_cauchy(level);
  std::vector<double> r0(mus.size()), r1(nus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double mu = mus[i];
    const double lam = mu * mu;
    const double ref_moment = mu * constant_potential_phi(level, lam).value -
                              mu * std::cos(mu * kPi) - omega_minus_s * std::sin(mu * kPi);
    r0[i] = rhs.k0[i] - ref_moment;
  }
  for (std::size_t i = 0; i < nus.size(); ++i) {
    const double lam = signed_square(nus[i]);
    const double ref_moment = constant_potential_phi(level, lam).derivative +
                              rho_sin_rho(lam, kPi) - omega_minus_s * cos_rho(lam, kPi);
    r1[i] = rhs.k[i] - ref_moment;
  }
  const MomentSystem sine_sys = step(4, [&] { return MomentSystem(mus, TrigKind::sine, r0); });
  const MomentSystem cos_sys = step(4, [&] { return MomentSystem(nus, TrigKind::cosine, r1); });
  const KernelFunction dK0 = step(4, [&] { return solve_moments(sine_sys, cfg.tolerances.gram_floor); });
  const KernelFunction dK = step(4, [&] { return solve_moments(cos_sys, cfg.tolerances.gram_floor); });
  KernelFunction K0(ref.K0.values() + dK0.values());
  KernelFunction K(ref.K.values() + dK.values());

  // Step 5: Cauchy data -> eigen data -> Gelfand-Levitan.
  CauchyData cd{K, K0, omega_minus_s};
  const EigenData ed = step(5, [&] { return eigen_data_from_cauchy(cd, n_gl); });
  Reconstruction rec = step(5, [&] { return gelfand_levitan_reconstruct(ed, cfg.grid_size); });

  SolveDiagnostics diag;
  diag.gram_sine = riesz_bounds(mus, TrigKind::sine);
  diag.gram_cosine = riesz_bounds(nus, TrigKind::cosine);
  diag.residual_sine = moment_residual(K0, mus, TrigKind::sine, rhs.k0);
  diag.residual_cosine = moment_residual(K, nus, TrigKind::cosine, rhs.k);
  diag.shift = s;
  diag.k0_norm = l2_norm(rhs.k0);
  diag.k_norm = l2_norm(rhs.k);
  diag.K_norm = K.l2_norm();
  diag.K0_norm = K0.l2_norm();
  diag.omega = omega_s - s * kPi;
  diag.omega_plus = omega_pm(S.q_right(), S.H());
  diag.omega_minus = diag.omega - diag.omega_plus;
  diag.n_aux = n_aux;
  diag.n_gl = n_gl;

  return SolveReport{rec.q + (-s), rec.h, diag, std::move(cd), mus, nus, rhs.k0, rhs.k};
}

MixedData synthesize_mixed_data(const GridFunction& q, double h, double H,
                                std::size_t n, const DirectOptions& opts) {
  auto rhos = eigenvalues_full(q, {h, H}, n, opts);
  return MixedData(q.restrict_to(kPi, 2.0 * kPi), H, std::move(rhos));
}

namespace {

struct Triple {
  GridFunction q;
  double h;
  double H;
};

Triple perturb(const GridFunction& q, double h, double H, const Perturbation& p,
               std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint64_t>(p.seed), static_cast<std::uint64_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double a[8], b[8];
  for (int k = 0; k < 8; ++k) {
    a[k] = u(rng) / (1.0 + k);
    b[k] = u(rng) / (1.0 + k);
  }
  const double dh = p.h_amplitude * u(rng);
  const double dH = p.H_amplitude * u(rng);
  std::vector<double> dq(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double x = q.node(i);
    double v = 0.0;
    for (int k = 0; k < 8; ++k) v += a[k] * std::cos(0.5 * k * x) + b[k] * std::sin(0.5 * k * x);
    dq[i] = v;
  }
  GridFunction pert(q.a(), q.b(), std::move(dq));
  const double norm = pert.l2_norm();
  const double scale = norm > 0.0 ? p.q_amplitude / norm : 0.0;
  // Shrink until the perturbed triple is back in the ball.
  for (double f = 1.0;; f *= 0.5) {
    std::vector<double> v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      v[i] = q.samples()[i] + f * scale * pert.samples()[i];
    }
    Triple t{GridFunction(q.a(), q.b(), std::move(v)), h + f * dh, H + f * dH};
    if (ball_norm(t.q, t.h, t.H) <= p.ball_radius || f < 1e-6) return t;
  }
}

SolveConfig with_omega(const SolveConfig& cfg, const Triple& t) {
  SolveConfig c = cfg;
  if (cfg.omega_mode.kind == OmegaMode::Kind::exact) {
    c.omega_mode = OmegaMode::exact(omega_of(t.q, t.h, t.H));
  }
  return c;
}

double output_distance(const GridFunction& q1, double h1, const GridFunction& q2, double h2) {
  return l2_distance(q1, q2) + std::abs(h1 - h2);
}

}  // namespace

SweepResult stability_sweep(const GridFunction& q, double h, double H,
                            const Perturbation& perturbation, std::size_t trials,
                            const SolveConfig& cfg, unsigned threads) {
  if (trials < 1) {
    throw NumericalError(ErrorCode::InvalidArgument, "need at least one trial");
  }
  cfg.validate();
  if (ball_norm(q, h, H) > perturbation.ball_radius) {
    throw NumericalError(ErrorCode::InvalidArgument, "base problem lies outside the ball");
  }
  const Triple base{q, h, H};
  const SolveConfig base_cfg = with_omega(cfg, base);
  // The base solve is shared by all trials.
  const MixedData S1 = synthesize_mixed_data(q, h, H, cfg.n_eigs);
  const SolveReport R1 = solve_half_inverse(S1, base_cfg);
  const GridFunction q1_left = q.restrict_to(0.0, kPi);

  SweepResult result;
  result.rows.resize(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      SweepRow& row = result.rows[i];
      row.trial = i;
      try {
        const Triple t = perturb(q, h, H, perturbation, i);
        const SolveConfig c2 = with_omega(cfg, t);
        const MixedData S2 = synthesize_mixed_data(t.q, t.h, t.H, cfg.n_eigs);
        const SolveReport R2 = solve_half_inverse(S2, c2);
        row.d = mixed_distance(S1, S2, base_cfg.omega_mode, c2.omega_mode);
        row.truth_distance = output_distance(q1_left, h, t.q.restrict_to(0.0, kPi), t.h);
        row.recon_distance = output_distance(R1.q_left, R1.h, R2.q_left, R2.h);
        row.cauchy_distance = l2_distance(R1.cauchy.K, R2.cauchy.K) +
                              l2_distance(R1.cauchy.K0, R2.cauchy.K0) +
                              std::abs(R1.diagnostics.omega_minus - R2.diagnostics.omega_minus);
        row.ratio = row.d > 0.0 ? row.recon_distance / row.d : 0.0;
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.failure = e.what();
      }
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, trials));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : result.rows) {
    if (r.ok) result.max_ratio = std::max(result.max_ratio, r.ratio);
  }
  return result;
}

}  // namespace halfinv
