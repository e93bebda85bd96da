#ifndef HALFINV_CHAR_PRODUCT_HPP
#define HALFINV_CHAR_PRODUCT_HPP

#include <cstddef>
#include <vector>

#include "halfinv/kernel_function.hpp"
#include "halfinv/sl_direct.hpp"

namespace halfinv {

enum class TailRule { free_reference_ratio };

/// Characteristic function rebuilt from a finite prefix of its zeros.
///
/// Evaluated as the free characteristic function -rho sin(2 rho pi) times the
/// ratio of products over the supplied zeros and the free zeros (n-1)/2.
/// Squared zeros past the supplied prefix follow the asymptotic model
/// ((n-1)/2)^2 + omega/pi up to index `tail_length`; the remaining
/// factors are summed in closed form to leading order.
class ZeroProductFunction {
 public:
  /// `zeros` are signed roots strictly increasing; tail_length = 0 selects
  /// 8 * zeros.size().
  ZeroProductFunction(std::vector<double> zeros, double omega,
                      std::size_t tail_length = 0,
                      TailRule rule = TailRule::free_reference_ratio);

  const std::vector<double>& zeros() const noexcept { return zeros_; }
  double omega() const noexcept { return omega_; }
  std::size_t tail_length() const noexcept { return tail_length_; }
  TailRule tail_rule() const noexcept { return rule_; }

  /// Value at lambda = rho^2.
  double operator()(double lambda) const;

 private:
  std::vector<double> zeros_;
  std::vector<double> lambdas_;  // zeros then modelled tail, length tail_length_
  double omega_;
  std::size_t tail_length_;
  TailRule rule_;
};

/// Delta(rho) for rho^2 = rho2.
double delta_from_zeros(const ZeroProductFunction& zpf, double rho2);

/// Kernel M of Delta(rho) = -rho sin 2 rho pi + omega cos 2 rho pi
/// + int_0^pi M(t) cos 2 rho t dt, from its cosine moments
/// c_m = Delta(m/2) - omega (-1)^m, m = 0..m_max.
KernelFunction extract_M(const ZeroProductFunction& zpf, double omega,
                         std::size_t m_max, std::size_t grid = kKernelGridSize);

/// Cosine moments c_0..c_{m_max} used by extract_M.
std::vector<double> M_moments(const ZeroProductFunction& zpf, double omega,
                              std::size_t m_max);

struct RightKernels {
  KernelFunction N;   // psi'(pi) kernel (cosine)
  KernelFunction N0;  // psi(pi) kernel (sine)
};

/// Kernels of the representations of psi(pi, rho) and psi'(pi, rho) for the
/// right half-interval, from psi at integer and half-integer rho.
RightKernels extract_right_kernels(const GridFunction& q_right, double H,
                                   std::size_t m_max,
                                   std::size_t grid = kKernelGridSize,
                                   const IntegratorOptions& opts = {});

}  // namespace halfinv

#endif  // HALFINV_CHAR_PRODUCT_HPP
