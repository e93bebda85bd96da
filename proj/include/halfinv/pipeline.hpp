#ifndef HALFINV_PIPELINE_HPP
#define HALFINV_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "halfinv/asymptotics.hpp"
#include "halfinv/cauchy_inverse.hpp"
#include "halfinv/char_product.hpp"
#include "halfinv/errors.hpp"
#include "halfinv/moment_solver.hpp"
#include "halfinv/sl_direct.hpp"

namespace halfinv {

struct ShiftPolicy {
  enum class Kind { automatic, fixed };
  Kind kind = Kind::automatic;
  double value = 0.0;

  static ShiftPolicy automatic() { return {Kind::automatic, 0.0}; }
  static ShiftPolicy fixed(double s) { return {Kind::fixed, s}; }
};

struct Tolerances {
  double wronskian = 1e-7;
  double gram_floor = kDefaultGramFloor;
  /// Lower bound for |psi'(pi, mu_n)| / mu_n and |psi(pi, nu_n)|.
  double denominator_floor = 1e-8;
};

struct SolveConfig {
  std::size_t n_eigs = 64;
  std::size_t grid_size = 256;
  ShiftPolicy shift_policy = ShiftPolicy::automatic();
  OmegaMode omega_mode = OmegaMode::estimate();
  Tolerances tolerances;
  /// Moment equations per kernel; 0 selects 3 n_eigs / 4.
  std::size_t n_aux = 0;
  /// Eigenvalues fed to the Gelfand-Levitan step; 0 selects n_eigs / 2.
  std::size_t n_gl = 0;

  std::size_t resolved_n_aux() const noexcept { return n_aux ? n_aux : 3 * n_eigs / 4; }
  std::size_t resolved_n_gl() const noexcept { return n_gl ? n_gl : n_eigs / 2; }
  /// Throws InvalidArgument unless n_eigs >= 8, grid_size >= 64 and the
  /// derived counts are usable.
  void validate() const;
};

struct SolveDiagnostics {
  GramConditioning gram_sine;    // mu-system
  GramConditioning gram_cosine;  // nu-system
  /// l2 misfit of the recovered kernels' moments against the right-hand sides.
  double residual_sine = 0.0;
  double residual_cosine = 0.0;
  double shift = 0.0;
  double k0_norm = 0.0;  // ||{k_{0,n}}||
  double k_norm = 0.0;   // ||{k_n}||
  double K_norm = 0.0;
  double K0_norm = 0.0;
  // Unshifted problem.
  double omega = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  std::size_t n_aux = 0;
  std::size_t n_gl = 0;
};

struct SolveReport {
  GridFunction q_left;
  double h = 0.0;
  SolveDiagnostics diagnostics;
  /// Cauchy data of the shifted left problem (q_left + shift, h).
  CauchyData cauchy;
  std::vector<double> mus, nus;  // shifted
  std::vector<double> k0, k;
};

struct RightHandSides {
  std::vector<double> k0;  // sine moments at mu_n
  std::vector<double> k;   // cosine moments at nu_n
};

/// Moments of K0 at mu_n and of K at nu_n from the characteristic function
/// and psi on the right half. Throws DenominatorUnderflow (with index) when
/// |psi'(pi, mu_n)| / mu_n or |psi(pi, nu_n)| falls below `floor`.
RightHandSides compute_rhs(const MixedData& S, const ZeroProductFunction& delta,
                           const std::vector<double>& mus,
                           const std::vector<double>& nus, double omega_minus,
                           double floor = 1e-8, const IntegratorOptions& opts = {});

/// Recovers q on (0, pi) and h from the mixed data. Errors carry the step
/// (1..5) at which they occurred.
SolveReport solve_half_inverse(const MixedData& S, const SolveConfig& cfg);

/// Mixed data of (q, h, H) with q on (0, 2 pi): q restricted to (pi, 2 pi),
/// H and the first n eigenvalues.
MixedData synthesize_mixed_data(const GridFunction& q, double h, double H,
                                std::size_t n, const DirectOptions& opts = {});

/// omega = h + H + (1/2) int q.
double omega_of(const GridFunction& q, double h, double H);

struct Perturbation {
  double q_amplitude = 0.0;  // L2(0, 2 pi) norm of the potential perturbation
  double h_amplitude = 0.0;
  double H_amplitude = 0.0;
  std::uint64_t seed = 0;
  /// Radius of the ball P_Q both triples must lie in.
  double ball_radius = 5.0;
};

struct SweepRow {
  std::size_t trial = 0;
  bool ok = false;
  std::string failure;
  double d = 0.0;                // mixed-data distance
  double truth_distance = 0.0;   // ||q1 - q2||_{L2(0,pi)} + |h1 - h2|, ground truth
  double recon_distance = 0.0;   // same for the reconstructions
  double cauchy_distance = 0.0;  // ||K diff|| + ||K0 diff|| + |omega_minus diff|
  double ratio = 0.0;            // recon_distance / d (0 when d = 0)
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double max_ratio = 0.0;
};

/// Random band-limited perturbations of (q, h, H) (first 8 Fourier modes in
/// x/2 on (0, 2 pi)); both triples are solved and compared. Trials run on up
/// to `threads` threads (0: hardware concurrency); results do not depend on
/// the thread count. In exact omega mode each solve gets its true omega.
SweepResult stability_sweep(const GridFunction& q, double h, double H,
                            const Perturbation& perturbation, std::size_t trials,
                            const SolveConfig& cfg, unsigned threads = 0);

}  // namespace halfinv

#endif  // HALFINV_PIPELINE_HPP
