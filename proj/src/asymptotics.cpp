#include "halfinv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfinv/errors.hpp"
#include "halfinv/spectral_functions.hpp"

namespace halfinv {

MixedData::MixedData(GridFunction q_right, double H, std::vector<double> spectrum)
    : q_right_(std::move(q_right)), H_(H), spectrum_(std::move(spectrum)) {
  if (!std::isfinite(H_)) {
    throw NumericalError(ErrorCode::InvalidArgument, "H must be finite");
  }
  for (std::size_t i = 0; i < spectrum_.size(); ++i) {
    if (!std::isfinite(spectrum_[i])) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "spectrum entries must be finite");
    }
    if (i > 0 && !(spectrum_[i] > spectrum_[i - 1])) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "spectrum must be strictly increasing",
                           static_cast<long>(i + 1));
    }
  }
}

SpectrumDecomposition decompose_spectrum(std::span<const double> rhos,
                                         OmegaMode mode) {
  const std::size_t n = rhos.size();
  SpectrumDecomposition d;
  if (mode.kind == OmegaMode::Kind::exact) {
    d.omega = mode.omega;
  } else {
    if (n < kMinEstimateLength) {
      throw NumericalError(ErrorCode::TooShort,
                           "omega estimation needs at least 8 eigenvalues, got " +
                               std::to_string(n));
    }
    const std::size_t first = n - n / 4;  // 0-based start of the last quarter
    double sum = 0.0;
    for (std::size_t i = first; i < n; ++i) {
      const double k = static_cast<double>(i + 1);
      sum += kPi * k * (rhos[i] - 0.5 * static_cast<double>(i));
    }
    d.omega = sum / static_cast<double>(n - first);
  }
  d.kappas.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    d.kappas[i] = k * (rhos[i] - 0.5 * static_cast<double>(i)) - d.omega / kPi;
  }
  return d;
}

std::vector<double> recompose(const SpectrumDecomposition& d) {
  std::vector<double> rhos(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    rhos[i] = 0.5 * static_cast<double>(i) + d.omega / (kPi * k) + d.kappas[i] / k;
  }
  return rhos;
}

AuxDecomposition decompose_aux(std::span<const double> mus,
                               std::span<const double> nus, double omega_plus) {
  if (mus.size() != nus.size()) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "auxiliary spectra must have equal lengths");
  }
  AuxDecomposition d;
  d.omega_plus = omega_plus;
  d.xis.resize(mus.size());
  d.taus.resize(nus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    d.xis[i] = k * (mus[i] - (k - 0.5)) - omega_plus / kPi;
    d.taus[i] = k * (nus[i] - (k - 1.0)) - omega_plus / kPi;
  }
  return d;
}

double omega_pm(const GridFunction& q_half, double coeff) {
  return coeff + 0.5 * q_half.integral();
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double mixed_distance(const MixedData& s1, const MixedData& s2, OmegaMode mode1,
                      OmegaMode mode2) {
  const std::size_t n = std::min(s1.spectrum().size(), s2.spectrum().size());
  const std::span<const double> r1(s1.spectrum().data(), n);
  const std::span<const double> r2(s2.spectrum().data(), n);
  const SpectrumDecomposition d1 = decompose_spectrum(r1, mode1);
  const SpectrumDecomposition d2 = decompose_spectrum(r2, mode2);
  return l2_distance(s1.q_right(), s2.q_right()) + std::abs(s1.H() - s2.H()) +
         std::abs(d1.omega - d2.omega) + l2_distance(d1.kappas, d2.kappas);
}

double ball_norm(const GridFunction& q, double h, double H) {
  return q.l2_norm() + std::abs(h) + std::abs(H);
}

double b_omega_norm(const SpectrumDecomposition& d) {
  return std::abs(d.omega) + l2_norm(d.kappas);
}

}  // namespace halfinv
