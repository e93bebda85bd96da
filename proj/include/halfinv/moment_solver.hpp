#ifndef HALFINV_MOMENT_SOLVER_HPP
#define HALFINV_MOMENT_SOLVER_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "halfinv/kernel_function.hpp"

namespace halfinv {

enum class TrigKind { sine, cosine };

/// Moment problem: find f in L2(0, pi) with
/// int_0^pi f(t) trig(lambda_n t) dt = moments[n].
class MomentSystem {
 public:
  MomentSystem(std::vector<double> frequencies, TrigKind kind,
               std::vector<double> moments);

  const std::vector<double>& frequencies() const noexcept { return frequencies_; }
  TrigKind kind() const noexcept { return kind_; }
  const std::vector<double>& moments() const noexcept { return moments_; }
  std::size_t size() const noexcept { return frequencies_.size(); }

 private:
  std::vector<double> frequencies_;
  TrigKind kind_;
  std::vector<double> moments_;
};

/// Extreme singular values of a Gram matrix.
struct GramConditioning {
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
};

inline constexpr double kDefaultGramFloor = 1e-8 * 1.5707963267948966;

/// G_mn = int_0^pi trig(lambda_m t) trig(lambda_n t) dt in closed form.
Eigen::MatrixXd gram_matrix(const std::vector<double>& frequencies, TrigKind kind);

GramConditioning riesz_bounds(const std::vector<double>& frequencies, TrigKind kind);

/// Coefficients c of f = sum c_n trig(lambda_n t) with the prescribed
/// moments. Throws IllConditioned when the smallest singular value of the
/// Gram matrix is below `floor`.
Eigen::VectorXd solve_moment_coefficients(const MomentSystem& ms,
                                          double floor = kDefaultGramFloor);

/// sum c_n trig(lambda_n t) sampled on (0, pi).
KernelFunction trig_series(const std::vector<double>& frequencies, TrigKind kind,
                           const Eigen::VectorXd& coeffs,
                           std::size_t grid = kKernelGridSize);

KernelFunction solve_moments(const MomentSystem& ms,
                             double floor = kDefaultGramFloor,
                             std::size_t grid = kKernelGridSize);

/// int_0^pi f(t) trig(lambda_n t) dt by composite quadrature on f's grid.
std::vector<double> moments_of(const KernelFunction& f,
                               const std::vector<double>& frequencies,
                               TrigKind kind);

}  // namespace halfinv

#endif  // HALFINV_MOMENT_SOLVER_HPP
