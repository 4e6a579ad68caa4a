#include <gtest/gtest.h>

#include <cmath>

#include "attitude/dynamics.hpp"
#include "attitude/error.hpp"
#include "attitude/random.hpp"
#include "oracles.hpp"

namespace {

using namespace attitude;

const Vec3 kE2{0, 1, 0};

void expect_mat_near(const Mat3& a, const Mat3& b, double tol) {
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(a.a[i], b.a[i], tol) << "entry " << i;
}

TEST(VTilde, ZeroOnRotations) {
  random::Engine rng(1);
  for (int n = 0; n < 100; ++n) EXPECT_NEAR(v_tilde(random::rotation(rng), 1.0), 0.0, 1e-29);
}

TEST(VTilde, ScaledScenarioStart) {
  const Mat3 r = 1.1 * rodrigues_exp(kE2, 2.0 * M_PI / 3.0);
  const double expected = 0.25 * std::pow(0.21 * std::sqrt(3.0), 2);
  EXPECT_NEAR(v_tilde(r, 1.0), expected, 1e-14);
  EXPECT_NEAR(v_tilde(r, 1.0), 0.03307, 1e-5);
}

TEST(VTilde, ScaledIdentityClosedForm) {
  for (double c : {0.5, 0.9, 1.3, 2.0})
    for (double k_e : {0.5, 1.0, 3.0})
      EXPECT_NEAR(v_tilde(c * Mat3::identity(), k_e),
                  0.75 * k_e * std::pow(c * c - 1.0, 2), 1e-14);
}

TEST(VTilde, RejectsNonPositiveGain) {
  try {
    v_tilde(Mat3::identity(), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveGain);
  }
}

TEST(GradVTilde, ZeroOnRotations) {
  random::Engine rng(2);
  for (int n = 0; n < 100; ++n)
    expect_mat_near(grad_v_tilde(random::rotation(rng), 1.0), Mat3::zero(), 1e-14);
}

TEST(GradVTilde, ScaledIdentityClosedForm) {
  for (double c : {0.5, 1.2, 2.0})
    expect_mat_near(grad_v_tilde(c * Mat3::identity(), 1.0),
                    c * (c * c - 1.0) * Mat3::identity(), 1e-14);
}

TEST(GradVTilde, MatchesFiniteDifferences) {
  random::Engine rng(3);
  for (int n = 0; n < 100; ++n) {
    const Mat3 r = random::near_rotation(rng, 0.5);
    const double k_e = 0.5 + n % 3;
    const Mat3 fd = oracle::fd_gradient(
        [k_e](const Mat3& m) { return oracle::v_tilde(m, k_e); }, r, 1e-6);
    const Mat3 an = grad_v_tilde(r, k_e);
    EXPECT_LT(frob_norm(an - fd) / frob_norm(fd), 1e-6);
  }
}

TEST(GradVTilde, PointsUphill) {
  // The field subtracts the gradient, so a step along it must lower v_tilde.
  const Mat3 r = 1.2 * Mat3::identity();
  const Mat3 g = grad_v_tilde(r, 1.0);
  EXPECT_LT(v_tilde(r - 1e-3 * g, 1.0), v_tilde(r, 1.0));
  EXPECT_GT(v_tilde(r + 1e-3 * g, 1.0), v_tilde(r, 1.0));
}

TEST(AmbientField, EquilibriumOnManifold) {
  random::Engine rng(4);
  const AmbientDeriv d = ambient_field({random::rotation(rng), {}}, {}, 1.0);
  expect_mat_near(d.dR, Mat3::zero(), 1e-15);
  EXPECT_EQ(d.domega, Vec3{});
}

TEST(AmbientField, ScaledIdentityWithoutRotation) {
  for (double c : {0.8, 1.1, 1.5}) {
    const AmbientDeriv d = ambient_field({c * Mat3::identity(), {}}, {}, 2.0);
    expect_mat_near(d.dR, -2.0 * c * (c * c - 1.0) * Mat3::identity(), 1e-14);
  }
}

TEST(AmbientField, ReducesToRigidBodyOnManifold) {
  random::Engine rng(5);
  for (int n = 0; n < 100; ++n) {
    const Mat3 r = random::rotation(rng);
    const Vec3 w = random::vector(rng, 3.0), u = random::vector(rng);
    const AmbientDeriv d = ambient_field({r, w}, u, 1.0);
    expect_mat_near(d.dR, oracle::mul(r, oracle::hat(w)), 1e-14);
    EXPECT_EQ(d.domega, u);
  }
}

TEST(ZTransform, ReferenceGivesZero) {
  const Mat3 r0 = Mat3::diag(-1, -1, 1);
  EXPECT_EQ(z_transform(r0, r0), Mat3::zero());
}

TEST(ZTransform, IdentityReference) {
  const Mat3 r = rodrigues_exp(kE2, 2.0 * M_PI / 3.0);
  EXPECT_EQ(z_transform(r, Mat3::identity()), r - Mat3::identity());
}

TEST(ZTransform, HalfTurnHasNoSkewPart) {
  random::Engine rng(6);
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const Mat3 z = z_transform(r0 * rodrigues_exp(random::unit_vector(rng), M_PI), r0);
    EXPECT_LT(norm(skew_vee(z)), 1e-14);
  }
}

TEST(ZTransform, RejectsNonRotationReference) {
  try {
    z_transform(Mat3::identity(), 1.1 * Mat3::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidReference);
  }
}

TEST(LinearizedField, ZeroState) {
  const LinearizedState d = linearized_field({}, {}, 1.0);
  EXPECT_EQ(d.zs, Mat3::zero());
  EXPECT_EQ(d.zk_vee, Vec3{});
  EXPECT_EQ(d.omega, Vec3{});
}

TEST(LinearizedField, SymmetricPartDecays) {
  const LinearizedState d = linearized_field({Mat3::identity(), {}, {}}, {}, 1.0);
  EXPECT_EQ(d.zs, -2.0 * Mat3::identity());
}

TEST(LinearizedField, PdClosedLoopIsHurwitz) {
  // Per axis the (z, omega) block is [[0, 1], [-k_p, -k_d]]; probe it with the
  // field itself and check the characteristic roots have negative real part.
  for (double k_p : {0.5, 4.0, 10.0})
    for (double k_d : {0.3, 2.0, 7.0}) {
      auto closed = [&](const Vec3& z, const Vec3& w) {
        const Vec3 u = -k_p * z - k_d * w;
        return linearized_field({Mat3::zero(), z, w}, u, 1.0);
      };
      const LinearizedState dz = closed({1, 0, 0}, {});
      const LinearizedState dw = closed({}, {1, 0, 0});
      const double a11 = dz.zk_vee.x, a12 = dw.zk_vee.x;
      const double a21 = dz.omega.x, a22 = dw.omega.x;
      const double tr = a11 + a22, dt = a11 * a22 - a12 * a21;
      EXPECT_LT(tr, 0.0);
      EXPECT_GT(dt, 0.0);  // trace < 0 and det > 0: both roots in the open left half-plane
    }
}

// ---- properties -------------------------------------------------------------

TEST(DynamicsProperty, VTildeDescentRate) {
  random::Engine rng(20);
  for (int n = 0; n < 200; ++n) {
    const Mat3 r = random::near_rotation(rng, 0.5);
    const double k_e = 1.5;
    const AmbientDeriv d = ambient_field({r, random::vector(rng, 2.0)}, random::vector(rng), k_e);
    const double rate = frob_inner(grad_v_tilde(r, k_e), d.dR);
    const Mat3 c = oracle::mul(r, oracle::sub(oracle::mul(oracle::tr(r), r), oracle::eye()));
    EXPECT_NEAR(rate, -k_e * k_e * oracle::frob2(c), 1e-12);
    EXPECT_LE(rate, 1e-14);

    // Same rate from a finite difference of v_tilde along dR.
    const double h = 1e-6;
    const double fd = (oracle::v_tilde(r + h * d.dR, k_e) - oracle::v_tilde(r - h * d.dR, k_e)) / (2 * h);
    EXPECT_NEAR(rate, fd, 1e-7 * std::max(1.0, std::abs(rate)));
  }
}

TEST(DynamicsProperty, ZsNegativeSemidefiniteOnManifold) {
  random::Engine rng(21);
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const Mat3 zs = sym_skew_split(z_transform(r0 * random::rotation(rng), r0)).sym;
    for (int k = 0; k < 1000; ++k) {
      const Vec3 x = random::unit_vector(rng);
      EXPECT_LE(dot(x, zs * x), 1e-12);
    }
  }
}

TEST(DynamicsProperty, OffManifoldStatesAreAcceptedAsIs) {
  const AmbientState s{1.3 * Mat3::identity(), {1, 2, 3}};
  EXPECT_FALSE(on_manifold(s));
  EXPECT_NO_THROW(ambient_field(s, {}, 1.0));
  EXPECT_NEAR(manifold_distance(s.R), 0.69 * std::sqrt(3.0), 1e-14);
}

}  // namespace
