#include "attitude/lyapunov.hpp"

#include <cmath>
#include <sstream>

#include "attitude/error.hpp"

namespace attitude {
namespace {

void require_near_manifold(const Mat3& r, const char* where) {
  const double res = so3_residual(r);
  if (!(res <= kOnManifoldGate)) {
    std::ostringstream os;
    os << where << ": state is off SO(3) x R^3 (residual " << res << ")";
    throw Error(ErrorCode::kOffManifold, os.str());
  }
}

double bound_terms(const Vec3& zk, const Vec3& omega, const Gains& g) {
  const double eps = g.epsilon;
  return -(g.k_d - eps) * dot(omega, omega) - eps * g.k_d * dot(zk, omega) -
         eps * g.k_p * dot(zk, zk);
}

}  // namespace

double height_w(const AmbientState& s, const Mat3& r0, const Gains& g) {
  require_valid_gains(g);
  const Mat3 z = z_transform(s.R, r0);
  const Vec3 zk = skew_vee(z);
  // ||Z_s||^2 + ||Z_k||^2 = ||Z||^2 since the parts are orthogonal.
  return 0.25 * g.k_p * frob_inner(z, z) + 0.5 * dot(s.omega, s.omega) +
         g.epsilon * dot(zk, s.omega);
}

double w_dot_bound(const AmbientState& s, const Mat3& r0, const Gains& g) {
  require_valid_gains(g);
  const Vec3 zk = skew_vee(z_transform(s.R, r0));
  return bound_terms(zk, s.omega, g);
}

double w_dot_analytic(const AmbientState& s, const Mat3& r0, const Gains& g) {
  require_valid_gains(g);
  require_near_manifold(s.R, "w_dot_analytic");
  const SymSkew z = sym_skew_split(z_transform(s.R, r0));
  const Vec3 zk = skew_vee(z.skew);
  const Mat3 w = hat(s.omega);
  const double trace_term = trace(transpose(w) * z.sym * w);
  return bound_terms(zk, s.omega, g) + 0.5 * g.epsilon * trace_term;
}

const char* to_string(ESet e) {
  switch (e) {
    case ESet::kE1: return "E1";
    case ESet::kE2: return "E2";
    case ESet::kNotInE: return "none";
  }
  return "none";
}

ESetClass classify_e_set(const AmbientState& s, const Mat3& r0, double tol) {
  require_near_manifold(s.R, "classify_e_set");
  const Mat3 z = z_transform(s.R, r0);
  const SymSkew parts = sym_skew_split(z);
  const double tr = trace(transpose(r0) * s.R);

  ESetClass out;
  out.zk_vee_norm = norm(skew_vee(z));
  out.omega_norm = norm(s.omega);
  const double res_e1 = std::abs(tr - 3.0);
  const double res_e2 = std::abs(tr + 1.0);

  if (frob_norm(s.R - r0) <= tol && out.omega_norm <= tol) {
    out.tag = ESet::kE1;
    out.trace_residual = res_e1;
  } else if (out.omega_norm <= tol && frob_norm(parts.skew) <= tol &&
             res_e2 <= tol) {
    out.tag = ESet::kE2;
    out.trace_residual = res_e2;
  } else {
    out.tag = ESet::kNotInE;
    out.trace_residual = std::min(res_e1, res_e2);
  }
  return out;
}

bool AdmissibleRegion::contains(const Mat3& r) const {
  return det(r) > 0.0 && manifold_distance(r) <= delta;
}

AdmissibleRegion admissible_region(double k_e) {
  if (!(k_e > 0.0) || !std::isfinite(k_e)) {
    throw Error(ErrorCode::kNonPositiveGain,
                "admissible_region: k_e must be positive");
  }
  AdmissibleRegion region;
  region.delta = std::sqrt(1.0 / 3.0) * (1.0 - kAdmissibleMargin);
  region.c = 0.25 * k_e * region.delta * region.delta;
  return region;
}

bool strictly_diagonally_dominant(const Mat3& a) {
  for (std::size_t i = 0; i < 3; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i) off += std::abs(a(i, j));
    if (!(std::abs(a(i, i)) > off)) return false;
  }
  return true;
}

bool diag_dominance_holds(const Mat3& a, double chi) {
  if (!(chi > 0.0) || !(chi < std::sqrt(1.0 / 3.0))) {
    std::ostringstream os;
    os << "diag_dominance_holds: chi must lie in (0, sqrt(1/3)) (got " << chi
       << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  if (!(frob_norm(a - Mat3::identity()) <= chi)) return true;
  return strictly_diagonally_dominant(a);
}

ZDynamics z_dynamics_on_manifold(const AmbientState& s, const Mat3& r0,
                                 const Gains& g) {
  require_valid_gains(g);
  require_near_manifold(s.R, "z_dynamics_on_manifold");
  const SymSkew z = sym_skew_split(z_transform(s.R, r0));
  const Vec3 zk = skew_vee(z.skew);
  const Mat3 w = hat(s.omega);
  const Mat3 half_bracket = 0.5 * hat(cross(zk, s.omega));

  ZDynamics out;
  out.dzs = 0.5 * (z.sym * w - w * z.sym) + z.skew * w - half_bracket;
  out.dzk = 0.5 * (z.sym * w + w * z.sym) + w + half_bracket;
  out.domega = -g.k_p * zk - g.k_d * s.omega;
  return out;
}

}  // namespace attitude
