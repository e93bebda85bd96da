#ifndef HALFINV_CAUCHY_INVERSE_HPP
#define HALFINV_CAUCHY_INVERSE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "halfinv/kernel_function.hpp"
#include "halfinv/sl_direct.hpp"

namespace halfinv {

/// (K, K0, omega_minus): determines phi(pi, rho) and phi'(pi, rho) through
///   phi(pi)  = cos rho pi + omega_minus sin(rho pi)/rho + (1/rho) int K0(t) sin(rho t) dt,
///   phi'(pi) = -rho sin rho pi + omega_minus cos rho pi + int K(t) cos(rho t) dt.
struct CauchyData {
  KernelFunction K;
  KernelFunction K0;
  double omega_minus = 0.0;
};

struct CauchyPhi {
  SolutionBoundary phi;         // phi(pi), phi'(pi)
  double dphi_prime_dlambda;    // d/dlambda phi'(pi, .)
};

/// Eigenvalues and norming constants of y'(0) - h y(0) = 0, y'(pi) = 0.
/// The Gelfand-Levitan reference is the constant potential
/// `reference_level` with h = 0: eigenvalues (n-1)^2 + reference_level and
/// norming constants pi (n = 1), pi/2 (n >= 2). Eigenvalues past the data
/// are taken from the reference.
struct EigenData {
  std::vector<double> lambdas;
  std::vector<double> alphas;
  double reference_level = 0.0;

  std::size_t size() const noexcept { return lambdas.size(); }
};

struct Reconstruction {
  GridFunction q;  // on (0, pi)
  double h = 0.0;
};

CauchyPhi phi_from_cauchy(const CauchyData& cd, double lambda);

/// Cauchy data of the constant potential c with h = 0, in closed form:
/// with S(z) = sum z^k/(k!(k+1)!) and z = c (pi^2 - t^2)/4,
/// K(t) = (c/2) S(z) + (c pi/2)^2 S'(z), K0(t) = (c^2 pi t/4) S'(z), omega_minus = c pi/2.
CauchyData constant_potential_cauchy(double c, std::size_t grid = kKernelGridSize);

/// phi(pi) and phi'(pi) of the constant potential c with h = 0.
SolutionBoundary constant_potential_phi(double c, double lambda);

inline constexpr double kDefaultPoleTolerance = 1e-10;

/// phi'(pi)/phi(pi); throws PoleProximity when |phi(pi)| < tol.
double weyl_value(const CauchyData& cd, double lambda,
                  double tol = kDefaultPoleTolerance);

/// First n zeros of phi'(pi, .) with norming constants
/// alpha_n = -phi(pi, eta_n) * d/dlambda phi'(pi, .)(eta_n^2), which is the
/// integral of phi(x, eta_n)^2 over (0, pi). The reference level is
/// 2 omega_minus / pi.
EigenData eigen_data_from_cauchy(const CauchyData& cd, std::size_t n);

/// Eigen data of the Neumann-at-pi problem computed directly from (q, h).
EigenData eigen_data_from_potential(const GridFunction& q_left, double h,
                                    std::size_t n, const DirectOptions& opts = {});

/// Forward map (q, h) -> Cauchy data, kernels as orthogonal partial series
/// of m_max + 1 cosine and m_max half-integer sine terms.
CauchyData cauchy_from_potential(const GridFunction& q_left, double h,
                                 std::size_t m_max,
                                 std::size_t grid = kKernelGridSize,
                                 const IntegratorOptions& opts = {});

/// Solves K(x,t) + F(x,t) + int_0^x K(x,s) F(s,t) ds = 0 with
/// F(x,t) = f(x+t) + f(|x-t|) on `grid_size` nodes of [0, pi] (trapezoid
/// Nystrom), and returns q = 2 d/dx K(x,x), h = K(0,0).
Reconstruction gelfand_levitan_from_f(const std::function<double(double)>& f,
                                      std::size_t grid_size);

/// Gelfand-Levitan reconstruction of (q, h) on (0, pi) relative to the
/// constant reference, so the free kernel uses lambda_n - reference_level.
Reconstruction gelfand_levitan_reconstruct(const EigenData& ed,
                                           std::size_t grid_size);

}  // namespace halfinv

#endif  // HALFINV_CAUCHY_INVERSE_HPP
