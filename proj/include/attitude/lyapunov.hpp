#pragma once

// Height function W on a tubular neighbourhood of SO(3) x R^3 and its Lie
// derivative along the closed loop. The set where that derivative vanishes is
// classified below.
//
//   W(R, Omega) = (k_p/4)(||Z_s||^2 + ||Z_k||^2) + 1/2 ||Omega||^2
//                 + epsilon <Z_k^vee, Omega>,        Z = R0^T R - I.
//
// On the manifold the zero set of dW/dt splits into E1 = {(R0, 0)} at level
// W = 0 and E2 = {R0^T R symmetric with trace -1, Omega = 0} at W = 2 k_p.

#include <array>
#include <string>

#include "attitude/controller.hpp"

namespace attitude {

/// Loose on-manifold gate for functions whose formulas rely on R being a
/// rotation. Simulated states sit near, not exactly on, SO(3).
inline constexpr double kOnManifoldGate = 1e3 * kTolSo3;

/// Default residual tolerance for classify_e_set.
inline constexpr double kESetTolerance = 1e-6;

double height_w(const AmbientState& s, const Mat3& r0, const Gains& g);

/// -(k_d - eps)||Omega||^2 - eps k_d <Z_k^vee, Omega> - eps k_p ||Z_k^vee||^2.
/// Nonpositive whenever the gains are valid.
double w_dot_bound(const AmbientState& s, const Mat3& r0, const Gains& g);

/// Exact dW/dt on the manifold: w_dot_bound plus (eps/2) tr(hat(Omega)^T Z_s
/// hat(Omega)). Valid up to O(distance to SO(3)) for nearby states; throws
/// Error(kOffManifold) beyond kOnManifoldGate.
double w_dot_analytic(const AmbientState& s, const Mat3& r0, const Gains& g);

enum class ESet { kE1, kE2, kNotInE };

const char* to_string(ESet e);

struct ESetClass {
  ESet tag = ESet::kNotInE;
  double zk_vee_norm = 0.0;
  double omega_norm = 0.0;
  /// |tr(R0^T R) - expected|, expected = 3 for E1, -1 for E2, and for
  /// kNotInE whichever of the two is closer.
  double trace_residual = 0.0;
};

ESetClass classify_e_set(const AmbientState& s, const Mat3& r0,
                         double tol = kESetTolerance);

/// Sublevel set V~^{-1}([0, c]) with c = k_e delta^2 / 4. Inside it
/// ||R^T R - I|| <= delta < sqrt(1/3), which keeps R invertible.
struct AdmissibleRegion {
  double c = 0.0;
  double delta = 0.0;

  bool contains(const Mat3& r) const;
};

/// Safety margin applied to the strict bound delta < sqrt(1/3).
inline constexpr double kAdmissibleMargin = 0.01;

/// delta = sqrt(1/3) (1 - kAdmissibleMargin), c = k_e delta^2 / 4.
AdmissibleRegion admissible_region(double k_e);

bool strictly_diagonally_dominant(const Mat3& a);

/// The implication ||A - I|| <= chi  =>  A strictly diagonally dominant.
/// Throws Error(kInvalidArgument) unless 0 < chi < sqrt(1/3).
bool diag_dominance_holds(const Mat3& a, double chi);

struct ZDynamics {
  Mat3 dzs;
  Mat3 dzk;
  Vec3 domega;
};

/// Closed-loop dynamics of (Z_s, Z_k, Omega) restricted to the manifold.
ZDynamics z_dynamics_on_manifold(const AmbientState& s, const Mat3& r0,
                                 const Gains& g);

}  // namespace attitude
