#include "halfinv/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfinv/errors.hpp"

namespace halfinv {

double integrate_uniform(std::span<const double> f, double step) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  if (intervals < 4) {
    double s = 0.5 * (f[0] + f[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += f[i];
    return s * step;
  }
  if (intervals % 4 == 0) {
    double s = 0.0;
    for (std::size_t i = 0; i < intervals; i += 4) {
      s += 7.0 * (f[i] + f[i + 4]) + 32.0 * (f[i + 1] + f[i + 3]) +
           12.0 * f[i + 2];
    }
    return s * 2.0 * step / 45.0;
  }
  auto simpson = [&](std::size_t first, std::size_t last) {
    double s = f[first] + f[last];
    for (std::size_t i = first + 1; i < last; ++i) {
      s += ((i - first) % 2 == 1 ? 4.0 : 2.0) * f[i];
    }
    return s * step / 3.0;
  };
  if (intervals % 2 == 0) return simpson(0, n - 1);
  const std::size_t m = n - 4;
  return simpson(0, m) +
         3.0 * step / 8.0 * (f[m] + 3.0 * f[m + 1] + 3.0 * f[m + 2] + f[m + 3]);
}

GridFunction::GridFunction(double a, double b, std::vector<double> samples,
                           Interpolation interpolation)
    : a_(a), b_(b), samples_(std::move(samples)), interpolation_(interpolation) {
  if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "grid function needs finite endpoints with b > a");
  }
  if (samples_.size() < kMinSamples) {
    throw NumericalError(ErrorCode::GridTooCoarse,
                         "grid function needs at least 8 samples, got " +
                             std::to_string(samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) {
      throw NumericalError(ErrorCode::InvalidArgument,
                           "grid function samples must be finite");
    }
  }
  step_ = (b_ - a_) / static_cast<double>(samples_.size() - 1);
  build_spline();
}

GridFunction GridFunction::sample(double a, double b, std::size_t n,
                                  const std::function<double(double)>& f) {
  if (n < kMinSamples) {
    throw NumericalError(ErrorCode::GridTooCoarse,
                         "grid function needs at least 8 samples");
  }
  std::vector<double> s(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = f(k + 1 == n ? b : a + static_cast<double>(k) * h);
  }
  return GridFunction(a, b, std::move(s));
}

GridFunction GridFunction::constant(double a, double b, std::size_t n,
                                    double c) {
  return GridFunction(a, b, std::vector<double>(n, c));
}

double GridFunction::node(std::size_t k) const noexcept {
  if (k + 1 == samples_.size()) return b_;
  return a_ + static_cast<double>(k) * step_;
}

// Clamped spline in Hermite form: solve for the node slopes with end slopes
// fixed by fourth-order one-sided differences.
void GridFunction::build_spline() {
  const std::size_t n = samples_.size();
  const double h = step_;
  const auto& f = samples_;
  slopes_.assign(n, 0.0);
  slopes_[0] =
      (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) /
      (12.0 * h);
  slopes_[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
                    16.0 * f[n - 4] + 3.0 * f[n - 5]) /
                   (12.0 * h);
  // d[i-1] + 4 d[i] + d[i+1] = 3 (f[i+1] - f[i-1]) / h, i = 1..n-2.
  const std::size_t m = n - 2;
  std::vector<double> c(m), r(m);
  for (std::size_t i = 0; i < m; ++i) {
    r[i] = 3.0 * (f[i + 2] - f[i]) / h;
  }
  r[0] -= slopes_[0];
  r[m - 1] -= slopes_[n - 1];
  // Thomas algorithm with constant diagonal 4 and off-diagonals 1.
  double denom = 4.0;
  c[0] = 1.0 / denom;
  r[0] /= denom;
  for (std::size_t i = 1; i < m; ++i) {
    denom = 4.0 - c[i - 1];
    c[i] = 1.0 / denom;
    r[i] = (r[i] - r[i - 1]) / denom;
  }
  for (std::size_t i = m - 1; i > 0; --i) r[i - 1] -= c[i - 1] * r[i];
  for (std::size_t i = 0; i < m; ++i) slopes_[i + 1] = r[i];
}

std::size_t GridFunction::locate(double x, double& t) const noexcept {
  const double s = (x - a_) / step_;
  const double last = static_cast<double>(samples_.size() - 1);
  if (!(s > 0.0)) {
    t = 0.0;
    return 0;
  }
  if (s >= last) {
    t = 1.0;
    return samples_.size() - 2;
  }
  auto k = static_cast<std::size_t>(s);
  if (k > samples_.size() - 2) k = samples_.size() - 2;
  t = s - static_cast<double>(k);
  return k;
}

double GridFunction::operator()(double x) const {
  const double s = (x - a_) / step_;
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12 && r >= 0.0 &&
      r <= static_cast<double>(samples_.size() - 1)) {
    return samples_[static_cast<std::size_t>(r)];
  }
  double t = 0.0;
  const std::size_t k = locate(x, t);
  const double f0 = samples_[k];
  const double f1 = samples_[k + 1];
  const double d0 = slopes_[k] * step_;
  const double d1 = slopes_[k + 1] * step_;
  const double c2 = 3.0 * (f1 - f0) - 2.0 * d0 - d1;
  const double c3 = 2.0 * (f0 - f1) + d0 + d1;
  return f0 + t * (d0 + t * (c2 + t * c3));
}

double GridFunction::derivative(double x) const {
  double t = 0.0;
  const std::size_t k = locate(x, t);
  const double f0 = samples_[k];
  const double f1 = samples_[k + 1];
  const double d0 = slopes_[k] * step_;
  const double d1 = slopes_[k + 1] * step_;
  const double c2 = 3.0 * (f1 - f0) - 2.0 * d0 - d1;
  const double c3 = 2.0 * (f0 - f1) + d0 + d1;
  return (d0 + t * (2.0 * c2 + 3.0 * t * c3)) / step_;
}

double GridFunction::integral() const {
  return integrate_uniform(samples_, step_);
}

double GridFunction::l2_norm() const {
  std::vector<double> sq(samples_.size());
  std::transform(samples_.begin(), samples_.end(), sq.begin(),
                 [](double v) { return v * v; });
  return std::sqrt(std::max(0.0, integrate_uniform(sq, step_)));
}

GridFunction GridFunction::restrict_to(double lo, double hi) const {
  const double sl = (lo - a_) / step_;
  const double sh = (hi - a_) / step_;
  const double rl = std::round(sl);
  const double rh = std::round(sh);
  if (std::abs(sl - rl) > 1e-9 || std::abs(sh - rh) > 1e-9 || rl < 0.0 ||
      rh > static_cast<double>(samples_.size() - 1) || rh <= rl) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "restriction bounds must be grid nodes");
  }
  const auto i0 = static_cast<std::size_t>(rl);
  const auto i1 = static_cast<std::size_t>(rh);
  std::vector<double> s(samples_.begin() + static_cast<std::ptrdiff_t>(i0),
                        samples_.begin() + static_cast<std::ptrdiff_t>(i1) + 1);
  return GridFunction(lo, hi, std::move(s), interpolation_);
}

GridFunction GridFunction::resampled(std::size_t n) const {
  if (n == samples_.size()) return *this;
  return sample(a_, b_, n, [this](double x) { return (*this)(x); });
}

GridFunction GridFunction::operator+(double s) const {
  std::vector<double> v(samples_);
  for (double& x : v) x += s;
  return GridFunction(a_, b_, std::move(v), interpolation_);
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  if (!same_grid(other)) {
    const GridFunction g = other.resampled(samples_.size());
    return *this - g;
  }
  std::vector<double> v(samples_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.samples_[i];
  return GridFunction(a_, b_, std::move(v), interpolation_);
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  if (!same_grid(other)) {
    const GridFunction g = other.resampled(samples_.size());
    return *this + g;
  }
  std::vector<double> v(samples_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.samples_[i];
  return GridFunction(a_, b_, std::move(v), interpolation_);
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return a_ == other.a_ && b_ == other.b_ &&
         samples_.size() == other.samples_.size();
}

double l2_distance(const GridFunction& f, const GridFunction& g) {
  if (std::abs(f.a() - g.a()) > 1e-12 || std::abs(f.b() - g.b()) > 1e-12) {
    throw NumericalError(ErrorCode::InvalidArgument,
                         "l2_distance needs functions on the same interval");
  }
  if (f.same_grid(g)) return (f - g).l2_norm();
  const std::size_t n = std::max(f.size(), g.size());
  return (f.resampled(n) - g.resampled(n)).l2_norm();
}

}  // namespace halfinv
