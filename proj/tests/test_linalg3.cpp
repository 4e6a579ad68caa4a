#include <gtest/gtest.h>

#include <cmath>

#include "attitude/error.hpp"
#include "attitude/linalg3.hpp"
#include "attitude/random.hpp"
#include "oracles.hpp"

namespace {

using namespace attitude;

void expect_mat_near(const Mat3& a, const Mat3& b, double tol) {
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(a.a[i], b.a[i], tol) << "entry " << i;
}

TEST(Hat, UnitYAxis) {
  EXPECT_EQ(hat({0, 1, 0}), (Mat3{{0, 0, 1, 0, 0, 0, -1, 0, 0}}));
}

TEST(Hat, ZeroVector) { EXPECT_EQ(hat({}), Mat3::zero()); }

TEST(Hat, IsSkewAndInvertsToInput) {
  const Mat3 m = hat({1, 2, 3});
  EXPECT_EQ(m, -transpose(m));
  EXPECT_EQ(vee(m), (Vec3{1, 2, 3}));
}

TEST(Hat, ActsAsCrossProduct) {
  const Vec3 v{0.3, -1.2, 2.0}, w{-0.7, 0.4, 1.1};
  const Vec3 a = hat(v) * w, b = cross(v, w);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(a[i], b[i]);
}

TEST(Vee, ZeroMatrix) { EXPECT_EQ(vee(Mat3::zero()), Vec3{}); }

TEST(Vee, ExplicitSkewMatrix) {
  EXPECT_EQ(vee(Mat3{{0, -3, 2, 3, 0, -1, -2, 1, 0}}), (Vec3{1, 2, 3}));
}

TEST(Vee, RejectsNonSkew) {
  try {
    vee(Mat3::identity());
    FAIL() << "expected NotSkew";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSkew);
  }
}

TEST(Vee, ToleranceScalesWithMatrixSize) {
  Mat3 big = hat({1e6, -2e6, 3e6});
  big(0, 1) += 1e-5;  // relative asymmetry ~1e-12, well within tolerance
  EXPECT_NO_THROW(vee(big));
  Mat3 small = hat({0.1, 0.2, 0.3});
  small(0, 1) += 1e-6;
  EXPECT_THROW(vee(small), Error);
}

TEST(SymSkewSplit, Identity) {
  const auto [s, k] = sym_skew_split(Mat3::identity());
  EXPECT_EQ(s, Mat3::identity());
  EXPECT_EQ(k, Mat3::zero());
}

TEST(SymSkewSplit, SkewInput) {
  const Mat3 m = hat({1, -2, 0.5});
  const auto [s, k] = sym_skew_split(m);
  EXPECT_EQ(s, Mat3::zero());
  EXPECT_EQ(k, m);
}

TEST(SymSkewSplit, ExplicitExample) {
  const auto [s, k] = sym_skew_split(Mat3{{1, 2, 0, 0, 1, 0, 0, 0, 1}});
  EXPECT_EQ(s, (Mat3{{1, 1, 0, 1, 1, 0, 0, 0, 1}}));
  EXPECT_EQ(k, (Mat3{{0, 1, 0, -1, 0, 0, 0, 0, 0}}));
}

TEST(FrobInner, IdentityWithItself) {
  EXPECT_EQ(frob_inner(Mat3::identity(), Mat3::identity()), 3.0);
}

TEST(FrobInner, MatchesTraceForm) {
  random::Engine rng(1);
  for (int n = 0; n < 100; ++n) {
    const Mat3 a = random::matrix(rng), b = random::matrix(rng);
    EXPECT_NEAR(frob_inner(a, b), trace(oracle::mul(oracle::tr(a), b)), 1e-14);
  }
}

TEST(FrobInner, SymmetricAndSkewAreOrthogonal) {
  random::Engine rng(2);
  for (int n = 0; n < 1000; ++n)
    EXPECT_NEAR(frob_inner(random::symmetric(rng), random::skew(rng)), 0.0, 1e-14);
}

TEST(FrobInner, HatPairIsTwiceDot) {
  random::Engine rng(3);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 v = random::vector(rng), w = random::vector(rng);
    EXPECT_NEAR(frob_inner(hat(v), hat(w)), 2.0 * dot(v, w), 1e-14);
  }
}

TEST(Rodrigues, ZeroAngleIsIdentity) {
  EXPECT_EQ(rodrigues_exp({0, 1, 0}, 0.0), Mat3::identity());
}

TEST(Rodrigues, TwoThirdsTurnAboutY) {
  const double h = std::sqrt(3.0) / 2.0;
  expect_mat_near(rodrigues_exp({0, 1, 0}, 2.0 * M_PI / 3.0),
                  Mat3{{-0.5, 0, h, 0, 1, 0, -h, 0, -0.5}}, 1e-15);
}

TEST(Rodrigues, HalfTurnIsSymmetricWithTraceMinusOne) {
  random::Engine rng(4);
  for (int n = 0; n < 100; ++n) {
    const Mat3 r = rodrigues_exp(random::unit_vector(rng), M_PI);
    expect_mat_near(r, transpose(r), 1e-15);
    EXPECT_NEAR(trace(r), -1.0, 1e-14);
  }
}

TEST(Rodrigues, RejectsNonUnitAxis) {
  try {
    rodrigues_exp({0, 2, 0}, 1.0);
    FAIL() << "expected NotUnitAxis";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnitAxis);
  }
}

TEST(Rodrigues, MatchesSeriesExpansion) {
  // Truncated power series of exp(theta * hat(axis)) as the reference.
  random::Engine rng(5);
  for (int n = 0; n < 20; ++n) {
    const Vec3 axis = random::unit_vector(rng);
    const double theta = 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const Mat3 a = oracle::hat(theta * axis);
    Mat3 term = oracle::eye(), sum = oracle::eye();
    for (int k = 1; k < 40; ++k) {
      term = (1.0 / k) * oracle::mul(term, a);
      sum = sum + term;
    }
    expect_mat_near(rodrigues_exp(axis, theta), sum, 1e-13);
  }
}

TEST(So3Residual, DetectsReflectionAndScaling) {
  EXPECT_EQ(so3_residual(Mat3::identity()), 0.0);
  EXPECT_NEAR(so3_residual(Mat3::diag(1, 1, -1)), 2.0, 1e-15);
  EXPECT_FALSE(is_rotation(1.1 * Mat3::identity()));
}

// ---- properties -------------------------------------------------------------

TEST(Linalg3Property, VeeHatRoundTripIsExact) {
  random::Engine rng(10);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 v = random::vector(rng, 10.0);
    EXPECT_EQ(vee(hat(v)), v);
    const Mat3 k = random::skew(rng, 10.0);
    EXPECT_EQ(hat(vee(k)), k);
  }
}

TEST(Linalg3Property, HatOfCrossIsCommutator) {
  random::Engine rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 v = random::vector(rng), w = random::vector(rng);
    expect_mat_near(hat(cross(v, w)), hat(v) * hat(w) - hat(w) * hat(v), 1e-14);
  }
}

TEST(Linalg3Property, NormBridge) {
  random::Engine rng(12);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 v = random::vector(rng);
    EXPECT_NEAR(dot(v, v), 0.5 * oracle::frob2(hat(v)), 1e-14);
  }
}

TEST(Linalg3Property, RodriguesLandsOnSo3) {
  random::Engine rng(13);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int n = 0; n < 1000; ++n) {
    const Mat3 r = rodrigues_exp(random::unit_vector(rng), angle(rng));
    EXPECT_TRUE(is_rotation(r, kTolSo3)) << so3_residual(r);
  }
}

}  // namespace
