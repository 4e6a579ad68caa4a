#include <gtest/gtest.h>

#include <cmath>

#include "attitude/controller.hpp"
#include "attitude/error.hpp"
#include "attitude/random.hpp"
#include "oracles.hpp"

namespace {

using namespace attitude;

const Mat3 kR0 = Mat3::diag(-1, -1, 1);

TEST(PdControl, ZeroAtReference) {
  EXPECT_EQ(pd_control({kR0, {}}, kR0, Gains{}), Vec3{});
}

TEST(PdControl, ZeroOnHalfTurnSet) {
  random::Engine rng(1);
  for (int n = 0; n < 50; ++n) {
    const Vec3 u = pd_control({kR0 * rodrigues_exp(random::unit_vector(rng), M_PI), {}}, kR0, Gains{});
    EXPECT_LT(norm(u), 1e-14);
  }
}

TEST(PdControl, ScenarioInitialState) {
  // Hand evaluation: R0^T R = [[1/2,0,-s],[0,-1,0],[-s,0,-1/2]] with s = sqrt(3)/2
  // is symmetric, so the proportional term vanishes and u = -k_d * Omega.
  const double s = std::sqrt(3.0) / 2.0;
  const Mat3 r{{-0.5, 0, s, 0, 1, 0, -s, 0, -0.5}};
  const Vec3 u = pd_control({r, {0, 1, 1}}, kR0, Gains{1, 4, 2, 1.584});
  EXPECT_NEAR(u.x, 0.0, 1e-15);
  EXPECT_NEAR(u.y, -2.0, 1e-15);
  EXPECT_NEAR(u.z, -2.0, 1e-15);
}

TEST(PdControl, ProportionalTermFromSkewPart) {
  // Small rotation about e3 from R0: Z_k^vee ~ sin(theta) e3.
  const double th = 0.1;
  const Mat3 r = kR0 * rodrigues_exp({0, 0, 1}, th);
  const Vec3 u = pd_control({r, {}}, kR0, Gains{1, 4, 2, 1.0});
  EXPECT_NEAR(u.z, -4.0 * std::sin(th), 1e-15);
  EXPECT_NEAR(u.x, 0.0, 1e-15);
}

TEST(MaxEpsilon, ScenarioGains) {
  EXPECT_NEAR(max_epsilon(4, 2), 1.6, 1e-15);
  EXPECT_NEAR(default_epsilon(4, 2), 1.584, 1e-15);
}

TEST(MaxEpsilon, SymmetricPoint) {
  for (double k_d : {0.5, 2.0, 6.0}) EXPECT_NEAR(max_epsilon(k_d * k_d / 4, k_d), k_d / 2, 1e-14);
}

TEST(MaxEpsilon, UnitGains) { EXPECT_NEAR(max_epsilon(1, 1), 0.8, 1e-15); }

TEST(MaxEpsilon, RejectsNonPositiveGains) {
  EXPECT_THROW(max_epsilon(0, 1), Error);
  EXPECT_THROW(max_epsilon(1, -1), Error);
}

TEST(ValidateGains, ScenarioGainsAreValid) {
  EXPECT_TRUE(validate_gains({1, 4, 2, 1.584}).ok());
}

TEST(ValidateGains, EpsilonAtWindowEdge) {
  const GainsReport r = validate_gains({1, 4, 2, 1.6});
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.message().find("epsilon not strictly below the window"), std::string::npos);
}

TEST(ValidateGains, EpsilonZero) {
  const GainsReport r = validate_gains({1, 4, 2, 0});
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.message().find("epsilon must be strictly positive"), std::string::npos);
}

TEST(ValidateGains, NonPositiveGainsReported) {
  const GainsReport r = validate_gains({0, -1, 2, 0.5});
  EXPECT_GE(r.violations.size(), 2u);
  try {
    require_valid_gains({0, 4, 2, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidGains);
  }
}

TEST(ClosedLoopField, MatchesOracle) {
  random::Engine rng(2);
  const Gains g{1.5, 3, 1.2, 0.5};
  const oracle::Params p{kR0, g.k_e, g.k_p, g.k_d};
  for (int n = 0; n < 100; ++n) {
    const AmbientState s{random::near_rotation(rng, 0.5), random::vector(rng)};
    const AmbientDeriv d = closed_loop_field(s, kR0, g);
    const oracle::State o = oracle::field({s.R, s.omega}, p);
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(d.dR.a[i], o.r.a[i], 1e-14);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(d.domega[i], o.w[i], 1e-14);
  }
}

// ---- properties -------------------------------------------------------------

TEST(ControllerProperty, AffineInOmegaWithSlopeMinusKd) {
  random::Engine rng(10);
  const Gains g{1, 4, 2, 1.584};
  for (int n = 0; n < 200; ++n) {
    const Mat3 r = random::near_rotation(rng, 0.5);
    const Vec3 w = random::vector(rng);
    const double alpha = 5.0 * (random::vector(rng).x);
    const Vec3 diff = pd_control({r, alpha * w}, kR0, g) - pd_control({r, {}}, kR0, g);
    const Vec3 expected = -g.k_d * alpha * w;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(diff[i], expected[i], 1e-13);
  }
}

TEST(ControllerProperty, DependsOnAttitudeOnlyThroughRelativeRotation) {
  random::Engine rng(11);
  const Gains g;
  for (int n = 0; n < 200; ++n) {
    const Mat3 q = random::rotation(rng);
    const Mat3 r0 = random::rotation(rng);
    const Mat3 r = random::near_rotation(rng, 0.3);
    const Vec3 w = random::vector(rng);
    const Vec3 a = pd_control({r0 * r, w}, r0, g);
    const Vec3 b = pd_control({q * r0 * r, w}, q * r0, g);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-13);
  }
}

TEST(ControllerProperty, EpsilonWindowGivesPositiveDefiniteForm) {
  random::Engine rng(12);
  std::uniform_real_distribution<double> gain(0.05, 20.0), frac(0.0, 1.0);
  for (int n = 0; n < 10000; ++n) {
    const double k_p = gain(rng), k_d = gain(rng);
    const double eps = max_epsilon(k_p, k_d) * frac(rng);
    if (eps <= 0.0) continue;
    ASSERT_TRUE(validate_gains({1, k_p, k_d, eps}).ok());
    EXPECT_LT(eps * eps * k_d * k_d, 4 * (k_d - eps) * eps * k_p);
    EXPECT_GT(k_d - eps, 0.0);
  }
}

}  // namespace
