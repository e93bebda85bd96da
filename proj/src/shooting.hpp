#ifndef HALFINV_SRC_SHOOTING_HPP
#define HALFINV_SRC_SHOOTING_HPP

#include "halfinv/grid_function.hpp"
#include "halfinv/sl_direct.hpp"

namespace halfinv::detail {

struct Shot {
  double y = 0.0;
  double dy = 0.0;  // derivative in x
  long sign_changes = 0;
  double energy = 0.0;  // integral of y^2 along the path (if requested)
};

/// Fixed-step RK4 for -y'' + q y = lambda y from `from` to `to` (either
/// order). Counts sign changes of y on the way.
Shot shoot(const GridFunction& q, double from, double to, double lambda,
           double y0, double dy0, const IntegratorOptions& opts,
           bool track_energy = false);

/// Unwrapped Pruefer angle at the end of a shot whose start had y > 0.
/// `travel_sign` is +1 for forward, -1 for backward integration.
double pruefer_angle(const Shot& s, double travel_sign);

/// Eigenvalues below lambda given the end angle and the target angle
/// beta in (0, pi] of the far boundary condition.
long count_from_angle(double theta, double beta);

}  // namespace halfinv::detail

#endif  // HALFINV_SRC_SHOOTING_HPP
