#ifndef HALFINV_SL_DIRECT_HPP
#define HALFINV_SL_DIRECT_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "halfinv/grid_function.hpp"

namespace halfinv {

struct BoundaryParams {
  double h = 0.0;
  double H = 0.0;
};

/// Value and x-derivative of a solution at an evaluation point.
struct SolutionBoundary {
  double value = 0.0;
  double derivative = 0.0;
};

enum class Direction { forward, backward };

struct IntegratorOptions {
  /// RK4 steps per unit length per unit of (1 + sqrt|lambda|).
  double steps_per_unit = 160.0;
  /// Samples of q the integrator requires.
  std::size_t min_samples = GridFunction::kMinSamples;
};

struct DirectOptions {
  IntegratorOptions integrator;
  /// Allowed relative disagreement of the two characteristic-function routes.
  double wronskian_tol = 1e-7;
  int max_bracket_expansions = 5;
};

/// Solves -y'' + q y = lambda y across the whole interval of q, starting from
/// (y0, dy0) at the near end, and returns (y, y') at the far end.
SolutionBoundary integrate_solution(const GridFunction& q, double lambda,
                                    double y0, double dy0, Direction direction,
                                    const IntegratorOptions& opts = {});

/// phi(at) and phi'(at), where phi(a) = 1, phi'(a) = h and a = q.a().
SolutionBoundary phi_boundary(const GridFunction& q_left, double h,
                              double lambda, double at,
                              const IntegratorOptions& opts = {});

/// psi(a) and psi'(a), where psi(b) = 1, psi'(b) = -H on [a, b] = q's interval.
SolutionBoundary psi_boundary(const GridFunction& q_right, double H,
                              double lambda, const IntegratorOptions& opts = {});

/// Characteristic function at lambda = rho^2 for q on (0, 2 pi):
/// phi'(pi) psi(pi) - phi(pi) psi'(pi). Also evaluates phi'(2 pi) + H phi(2 pi)
/// and throws WronskianMismatch if the two disagree beyond tolerance.
double char_value(const GridFunction& q, const BoundaryParams& bp,
                  double lambda, const DirectOptions& opts = {});

/// First n eigenvalues of the full problem on (0, 2 pi) as signed roots rho_n
/// (negative entries encode rho_n^2 < 0).
std::vector<double> eigenvalues_full(const GridFunction& q,
                                     const BoundaryParams& bp, std::size_t n,
                                     const DirectOptions& opts = {});

struct AuxSpectra {
  /// Zeros of psi(pi, .) : Dirichlet condition at pi.
  std::vector<double> mus;
  /// Zeros of psi'(pi, .) : Neumann condition at pi.
  std::vector<double> nus;
};

/// Auxiliary spectra of the right half-interval problem, as signed roots.
AuxSpectra aux_spectra(const GridFunction& q_right, double H, std::size_t n,
                       const DirectOptions& opts = {});

GridFunction apply_shift(const GridFunction& q, double s);
/// Shifts squared roots: rho_n -> signed_sqrt(signed_square(rho_n) + s).
std::vector<double> shift_spectrum(const std::vector<double>& rhos, double s);

/// Shift that moves the smallest auxiliary eigenvalue to exactly 3/4, so
/// that every mu_n, nu_n >= 1/2 afterwards. May be negative. Data that were
/// already shifted by s0 get s - s0, so the total shift is canonical.
double select_shift(const AuxSpectra& aux);

namespace detail {

/// Number of eigenvalues strictly below lambda, from the Pruefer angle.
long count_below_full(const GridFunction& q, const BoundaryParams& bp,
                      double lambda, const IntegratorOptions& opts = {});

struct ShotEval {
  long count = 0;
  double value = 0.0;
};

/// Locates the n-th (1-based) eigenvalue in lambda. `eval` returns the number
/// of eigenvalues below its argument and a function whose zero is the
/// eigenvalue. The initial bracket is rho_guess +- half_width in rho and is
/// widened geometrically at most `max_expansions` times.
double locate_eigenvalue(long n, double rho_guess, double half_width,
                         const std::function<ShotEval(double)>& eval,
                         int max_expansions);

/// Bracketed root of f on [lo, hi] (f(lo) f(hi) <= 0): bisection steps
/// followed by Illinois-modified secant steps.
double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, double flo, double fhi);

}  // namespace detail

}  // namespace halfinv

#endif  // HALFINV_SL_DIRECT_HPP
