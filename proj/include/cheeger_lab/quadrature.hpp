#pragma once

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cheeger {

/// Default absolute tolerances.
inline constexpr double kGammaTolerance = 1e-10;
inline constexpr double kCutTolerance = 1e-9;

/// Adaptive Gauss-Kronrod (15-point) integral of f over [a, b] to an absolute
/// tolerance. Boost stops on error <= tol * L1, so a single-panel pass first
/// estimates the L1 norm and the relative target is set from it.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = kCutTolerance, unsigned max_depth = 15) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  if (!(b > a)) return 0.0;
  double l1 = 0.0;
  double error = 0.0;
  const double coarse = GK::integrate(f, a, b, 0, 0.0, &error, &l1);
  if (error <= abs_tol) return coarse;
  const double rel = l1 > 0.0 ? std::clamp(abs_tol / l1, 1e-15, 1e-3) : abs_tol;
  return GK::integrate(f, a, b, max_depth, rel, &error, &l1);
}

}  // namespace cheeger
