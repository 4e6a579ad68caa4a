#pragma once

// Rigid-body kinematics extended to the ambient space R^{3x3} x R^3, with the
// manifold-attraction potential
//
//   V~(R) = (k_e / 4) ||R^T R - I||^2
//
// subtracted from the vector field so that SO(3) x R^3 becomes attractive
// under ordinary Euclidean integration.

#include "attitude/linalg3.hpp"

namespace attitude {

/// A point (R, Omega) of the ambient space. R need not be a rotation.
struct AmbientState {
  Mat3 R = Mat3::identity();
  Vec3 omega{};

  friend bool operator==(const AmbientState&, const AmbientState&) = default;
};

struct AmbientDeriv {
  Mat3 dR{};
  Vec3 domega{};
};

/// Coordinates of the linearized model. zs is the symmetric part of Z and
/// zk_vee the vee of its skew part.
struct LinearizedState {
  Mat3 zs{};
  Vec3 zk_vee{};
  Vec3 omega{};
};

/// ||R^T R - I||, the distance-to-manifold measure used for admissibility.
double manifold_distance(const Mat3& r);

inline bool on_manifold(const AmbientState& s, double tol = kTolSo3) {
  return is_rotation(s.R, tol);
}

double v_tilde(const Mat3& r, double k_e);

/// Gradient of v_tilde with respect to R: k_e R (R^T R - I). This is the
/// term subtracted from R hat(Omega) in the ambient field.
Mat3 grad_v_tilde(const Mat3& r, double k_e);

/// dR = R hat(Omega) - k_e R (R^T R - I), dOmega = u.
AmbientDeriv ambient_field(const AmbientState& s, const Vec3& u, double k_e);

/// Z = R0^T R - I. Throws Error(kInvalidReference) unless R0 is a rotation.
Mat3 z_transform(const Mat3& r, const Mat3& r0);

/// dZs = -2 k_e Zs, d(Zk^vee) = Omega, dOmega = u.
LinearizedState linearized_field(const LinearizedState& ls, const Vec3& u,
                                 double k_e);

void require_reference(const Mat3& r0);

namespace detail {
// ambient_field without argument validation; correction_gain may be any sign.
AmbientDeriv ambient_field_unchecked(const AmbientState& s, const Vec3& u,
                                     double correction_gain);
}  // namespace detail

}  // namespace attitude
