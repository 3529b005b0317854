#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/quadrature.hpp"

namespace cheeger {

inline constexpr int kMaxDimension = 20;

/// d-volume of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1).
inline double unit_ball_volume(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw DomainError("unit_ball_volume: dimension " + std::to_string(d) + " outside [1, 20]");
  }
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Volume of the slice {x : |x| <= 1, <u, x> >= eta} of the unit d-ball.
///
/// Uses the regularized incomplete beta identity
///   cap(eta) = (omega_d / 2) * I_{1 - eta^2}((d + 1) / 2, 1 / 2).
inline double cap_volume(int d, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("cap_volume: height outside [0, 1]");
  }
  const double half_ball = 0.5 * unit_ball_volume(d);
  if (eta == 0.0) return half_ball;
  if (eta == 1.0) return 0.0;
  return half_ball * boost::math::ibeta(0.5 * (d + 1), 0.5, (1.0 - eta) * (1.0 + eta));
}

/// Average cap volume over a uniform height, by adaptive quadrature.
inline double gamma_constant(int d, double abs_tol = kGammaTolerance) {
  unit_ball_volume(d);  // range check
  return integrate([d](double eta) { return cap_volume(d, eta); }, 0.0, 1.0, abs_tol);
}

/// The dimension-dependent normalizing constants.
struct Constants {
  int d = 0;
  double omega_d = 0.0;
  double gamma_d = 0.0;

  static Constants for_dimension(int d) { return {d, unit_ball_volume(d), gamma_constant(d)}; }
};

}  // namespace cheeger
