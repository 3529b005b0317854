#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cheeger_lab/constants.hpp"
#include "oracles.hpp"

using namespace cheeger;

namespace {

// omega_d by the recursion omega_d = 2 pi / d * omega_{d-2}, omega_0 = 1, omega_1 = 2.
double omega_recursive(int d) {
  if (d == 0) return 1.0;
  if (d == 1) return 2.0;
  return 2.0 * std::numbers::pi / d * omega_recursive(d - 2);
}

}  // namespace

TEST(UnitBallVolume, LowDimensions) {
  EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
  EXPECT_DOUBLE_EQ(unit_ball_volume(2), std::numbers::pi);
  EXPECT_DOUBLE_EQ(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0);
}

TEST(UnitBallVolume, MatchesRecursion) {
  for (int d = 1; d <= 20; ++d) EXPECT_NEAR(unit_ball_volume(d), omega_recursive(d), 1e-13) << d;
}

TEST(UnitBallVolume, RejectsOutOfRange) {
  EXPECT_THROW(unit_ball_volume(0), DomainError);
  EXPECT_THROW(unit_ball_volume(21), DomainError);
}

TEST(CapVolume, Endpoints) {
  for (int d = 1; d <= 10; ++d) {
    EXPECT_EQ(cap_volume(d, 1.0), 0.0);
    EXPECT_EQ(cap_volume(d, 0.0), unit_ball_volume(d) / 2.0);
  }
}

TEST(CapVolume, PlanarSegment) {
  EXPECT_NEAR(cap_volume(2, 0.5), std::acos(0.5) - 0.5 * std::sqrt(0.75), 1e-14);
  EXPECT_NEAR(cap_volume(2, 0.5), 0.614185, 1e-6);
  // Area above y = 0.5 as an integral of chord lengths.
  const double by_quadrature = oracle::simpson([](double y) { return 2.0 * std::sqrt(std::max(0.0, 1 - y * y)); },
                                               0.5, 1.0, 200000);
  EXPECT_NEAR(cap_volume(2, 0.5), by_quadrature, 1e-7);
}

TEST(CapVolume, ThreeDimensionalClosedForm) {
  for (double eta : {0.1, 0.3, 0.7, 0.95}) {
    EXPECT_NEAR(cap_volume(3, eta), std::numbers::pi * (1 - eta) * (1 - eta) * (2 + eta) / 3.0, 1e-13);
  }
}

TEST(CapVolume, Monotone) {
  for (int d = 1; d <= 10; ++d) {
    double prev = cap_volume(d, 0.0);
    for (int k = 1; k <= 200; ++k) {
      const double v = cap_volume(d, k / 200.0);
      EXPECT_LE(v, prev) << d << " " << k;
      prev = v;
    }
  }
}

TEST(CapVolume, RejectsOutOfRange) {
  EXPECT_THROW(cap_volume(2, -0.01), DomainError);
  EXPECT_THROW(cap_volume(2, 1.01), DomainError);
}

TEST(GammaConstant, ClosedForms) {
  EXPECT_NEAR(gamma_constant(1), 0.5, 1e-9);
  EXPECT_NEAR(gamma_constant(2), 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(gamma_constant(3), std::numbers::pi / 4.0, 1e-9);
}

TEST(GammaConstant, SliceIdentityUpToTen) {
  // Integrating the cap over eta slices the half ball: gamma_d = omega_{d-1} / (d + 1).
  for (int d = 1; d <= 10; ++d) EXPECT_NEAR(gamma_constant(d), omega_recursive(d - 1) / (d + 1), 1e-9) << d;
}

TEST(GammaConstant, BetweenZeroAndHalfBall) {
  for (int d = 1; d <= 20; ++d) {
    const double g = gamma_constant(d);
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, unit_ball_volume(d) / 2.0);
  }
}

TEST(Constants, ForDimension) {
  const Constants c = Constants::for_dimension(2);
  EXPECT_EQ(c.d, 2);
  EXPECT_DOUBLE_EQ(c.omega_d, std::numbers::pi);
  EXPECT_NEAR(c.gamma_d, 2.0 / 3.0, 1e-9);
}
