#ifndef HALFINV_ASYMPTOTICS_HPP
#define HALFINV_ASYMPTOTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "halfinv/grid_function.hpp"

namespace halfinv {

/// How the constant omega of the eigenvalue asymptotics is obtained.
struct OmegaMode {
  enum class Kind { exact, estimate };
  Kind kind = Kind::estimate;
  double omega = 0.0;

  static OmegaMode exact(double omega) { return {Kind::exact, omega}; }
  static OmegaMode estimate() { return {Kind::estimate, 0.0}; }
};

/// rho_n = (n-1)/2 + omega/(pi n) + kappa_n/n, n = 1..N.
struct SpectrumDecomposition {
  double omega = 0.0;
  std::vector<double> kappas;

  std::size_t size() const noexcept { return kappas.size(); }
};

/// mu_n = n - 1/2 + omega_plus/(pi n) + xi_n/n,
/// nu_n = n - 1 + omega_plus/(pi n) + tau_n/n.
struct AuxDecomposition {
  double omega_plus = 0.0;
  std::vector<double> xis;
  std::vector<double> taus;
};

/// The given data of the half-inverse problem: potential on (pi, 2 pi), the
/// right boundary coefficient and a prefix of the spectrum (signed roots).
class MixedData {
 public:
  MixedData(GridFunction q_right, double H, std::vector<double> spectrum);

  const GridFunction& q_right() const noexcept { return q_right_; }
  double H() const noexcept { return H_; }
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

 private:
  GridFunction q_right_;
  double H_;
  std::vector<double> spectrum_;
};

/// Estimate mode needs at least this many eigenvalues.
inline constexpr std::size_t kMinEstimateLength = 8;

/// Splits a spectrum prefix into (omega, kappa). In estimate mode omega is
/// the mean of pi n (rho_n - (n-1)/2) over the last quarter of indices.
SpectrumDecomposition decompose_spectrum(std::span<const double> rhos,
                                         OmegaMode mode);

/// Inverse of decompose_spectrum.
std::vector<double> recompose(const SpectrumDecomposition& d);

AuxDecomposition decompose_aux(std::span<const double> mus,
                               std::span<const double> nus, double omega_plus);

/// coeff + (1/2) * integral of q over its interval: omega_minus for
/// (q|(0,pi), h), omega_plus for (q|(pi,2pi), H).
double omega_pm(const GridFunction& q_half, double coeff);

/// Distance between two mixed data collections:
/// ||q1 - q2||_{L2(pi,2pi)} + |H1 - H2| + |omega1 - omega2| + ||kappa1 - kappa2||,
/// comparing spectra on their common prefix.
double mixed_distance(const MixedData& s1, const MixedData& s2,
                      OmegaMode mode1 = OmegaMode::estimate(),
                      OmegaMode mode2 = OmegaMode::estimate());

/// ||q||_{L2} + |h| + |H|; (q, h, H) lies in the ball P_Q iff this is <= Q.
double ball_norm(const GridFunction& q, double h, double H);

/// |omega| + ||kappa||_{l2}.
double b_omega_norm(const SpectrumDecomposition& d);

double l2_norm(std::span<const double> v);
double l2_distance(std::span<const double> a, std::span<const double> b);

}  // namespace halfinv

#endif  // HALFINV_ASYMPTOTICS_HPP
