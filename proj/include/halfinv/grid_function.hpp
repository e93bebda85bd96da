#ifndef HALFINV_GRID_FUNCTION_HPP
#define HALFINV_GRID_FUNCTION_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace halfinv {

/// Composite Newton-Cotes quadrature of uniformly spaced samples.
///
/// Uses Boole's rule when the interval count is a multiple of 4, Simpson's
/// rule when it is even, and Simpson with a trailing 3/8 panel otherwise.
/// Falls back to the trapezoid rule below 4 intervals.
double integrate_uniform(std::span<const double> samples, double step);

enum class Interpolation { cubic_spline };

/// Real function on [a, b] given by uniform samples (both endpoints
/// included) and a clamped cubic spline through them.
///
/// The spline end slopes come from fourth-order one-sided differences, so
/// interpolation is fourth-order accurate up to the boundary.
class GridFunction {
 public:
  static constexpr std::size_t kMinSamples = 8;

  GridFunction(double a, double b, std::vector<double> samples,
               Interpolation interpolation = Interpolation::cubic_spline);

  /// Samples `f` on `n` uniform nodes of [a, b].
  static GridFunction sample(double a, double b, std::size_t n,
                             const std::function<double(double)>& f);
  static GridFunction constant(double a, double b, std::size_t n, double c);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  Interpolation interpolation() const noexcept { return interpolation_; }

  /// Abscissa of node k; evaluation there returns samples()[k] exactly.
  double node(std::size_t k) const noexcept;

  double operator()(double x) const;
  double derivative(double x) const;
  /// Spline slope at node k.
  double node_slope(std::size_t k) const noexcept { return slopes_[k]; }

  double integral() const;
  double l2_norm() const;

  /// Restriction to [lo, hi]; both must be grid nodes.
  GridFunction restrict_to(double lo, double hi) const;
  /// Re-sampling of the spline on n uniform nodes of [a, b].
  GridFunction resampled(std::size_t n) const;

  GridFunction operator+(double s) const;
  /// Sum and difference; `other` is resampled onto this grid if needed.
  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;

  bool same_grid(const GridFunction& other) const noexcept;

 private:
  void build_spline();
  std::size_t locate(double x, double& t) const noexcept;

  double a_;
  double b_;
  double step_;
  std::vector<double> samples_;
  std::vector<double> slopes_;
  Interpolation interpolation_;
};

/// L2 distance of two functions on a common interval. Grids may differ;
/// otherwise both are compared on the finer one.
double l2_distance(const GridFunction& f, const GridFunction& g);

}  // namespace halfinv

#endif  // HALFINV_GRID_FUNCTION_HPP
