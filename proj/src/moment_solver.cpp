#include "halfinv/moment_solver.hpp"

#include <cmath>
#include <string>

#include "halfinv/errors.hpp"
#include "halfinv/grid_function.hpp"
#include "halfinv/spectral_functions.hpp"

namespace halfinv {

namespace {

void validate_frequencies(const std::vector<double>& f, TrigKind kind) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      throw NumericalError(ErrorCode::InvalidArgument, "frequency is not finite",
                           static_cast<long>(i + 1));
    }
    if (i > 0 && !(f[i] > f[i - 1])) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "frequencies must be strictly increasing",
                           static_cast<long>(i + 1));
    }
  }
  if (kind == TrigKind::sine && !f.empty() && !(f.front() > 0.0)) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "sine frequencies must be positive", 1);
  }
  if (kind == TrigKind::cosine && !f.empty() && f.front() < 0.0) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "cosine frequencies must be non-negative", 1);
  }
}

// int_0^pi cos(x t) dt
double cos_integral(double x) { return kPi * sinc(kPi * x); }

double trig(TrigKind kind, double lambda, double t) {
  return kind == TrigKind::sine ? std::sin(lambda * t) : std::cos(lambda * t);
}

}  // namespace

MomentSystem::MomentSystem(std::vector<double> frequencies, TrigKind kind,
                           std::vector<double> moments)
    : frequencies_(std::move(frequencies)), kind_(kind), moments_(std::move(moments)) {
  if (frequencies_.size() != moments_.size()) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "frequencies and moments differ in length");
  }
  validate_frequencies(frequencies_, kind_);
  for (std::size_t i = 0; i < moments_.size(); ++i) {
    if (!std::isfinite(moments_[i])) {
      throw NumericalError(ErrorCode::InvalidArgument, "moment is not finite",
                           static_cast<long>(i + 1));
    }
  }
}

Eigen::MatrixXd gram_matrix(const std::vector<double>& frequencies, TrigKind kind) {
  validate_frequencies(frequencies, kind);
  const auto n = static_cast<Eigen::Index>(frequencies.size());
  const double sign = kind == TrigKind::sine ? -1.0 : 1.0;
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double a = frequencies[i], b = frequencies[j];
      // product-to-sum; the i == j limit is pi/2 +- sin(2 a pi)/(4a)
      const double v = 0.5 * (cos_integral(a - b) + sign * cos_integral(a + b));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

GramConditioning riesz_bounds(const std::vector<double>& frequencies, TrigKind kind) {
  const Eigen::MatrixXd g = gram_matrix(frequencies, kind);
  if (g.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {std::max(0.0, ev.minCoeff()), ev.maxCoeff()};
}

Eigen::VectorXd solve_moment_coefficients(const MomentSystem& ms, double floor) {
  const Eigen::MatrixXd g = gram_matrix(ms.frequencies(), ms.kind());
  const auto n = g.rows();
  if (n == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double smallest = es.eigenvalues().minCoeff();
  if (!(smallest >= floor)) {
    throw NumericalError(ErrorCode::IllConditioned,
                         "Gram matrix smallest singular value " +
                             std::to_string(smallest) + " below floor");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(ErrorCode::IllConditioned,
                         "Gram matrix is not positive definite");
  }
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(ms.moments().data(), n);
  return llt.solve(rhs);
}

KernelFunction trig_series(const std::vector<double>& frequencies, TrigKind kind,
                           const Eigen::VectorXd& coeffs, std::size_t grid) {
  if (static_cast<std::size_t>(coeffs.size()) != frequencies.size()) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "coefficient and frequency counts differ");
  }
  std::vector<double> v(grid, 0.0);
  const double h = kPi / static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
      s += coeffs[static_cast<Eigen::Index>(k)] * trig(kind, frequencies[k], t);
    }
    v[i] = s;
  }
  return KernelFunction(GridFunction(0.0, kPi, std::move(v)));
}

KernelFunction solve_moments(const MomentSystem& ms, double floor, std::size_t grid) {
  return trig_series(ms.frequencies(), ms.kind(),
                     solve_moment_coefficients(ms, floor), grid);
}

std::vector<double> moments_of(const KernelFunction& f,
                               const std::vector<double>& frequencies,
                               TrigKind kind) {
  const GridFunction& g = f.values();
  const auto samples = g.samples();
  std::vector<double> prod(samples.size());
  std::vector<double> out(frequencies.size());
  for (std::size_t k = 0; k < frequencies.size(); ++k) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      prod[i] = samples[i] * trig(kind, frequencies[k], g.node(i));
    }
    out[k] = integrate_uniform(prod, g.step());
  }
  return out;
}

}  // namespace halfinv
