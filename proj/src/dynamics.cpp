#include "attitude/dynamics.hpp"

#include <sstream>

#include "attitude/error.hpp"

namespace attitude {
namespace {

void require_positive_ke(double k_e, const char* where) {
  if (!(k_e > 0.0) || !std::isfinite(k_e)) {
    std::ostringstream os;
    os << where << ": k_e must be positive (got " << k_e << ")";
    throw Error(ErrorCode::kNonPositiveGain, os.str());
  }
}

}  // namespace

double manifold_distance(const Mat3& r) {
  return frob_norm(transpose(r) * r - Mat3::identity());
}

double v_tilde(const Mat3& r, double k_e) {
  require_positive_ke(k_e, "v_tilde");
  const double d = manifold_distance(r);
  return 0.25 * k_e * d * d;
}

Mat3 grad_v_tilde(const Mat3& r, double k_e) {
  require_positive_ke(k_e, "grad_v_tilde");
  return k_e * (r * (transpose(r) * r - Mat3::identity()));
}

namespace detail {

AmbientDeriv ambient_field_unchecked(const AmbientState& s, const Vec3& u,
                                     double correction_gain) {
  const Mat3 excess = transpose(s.R) * s.R - Mat3::identity();
  return {s.R * hat(s.omega) - correction_gain * (s.R * excess), u};
}

}  // namespace detail

AmbientDeriv ambient_field(const AmbientState& s, const Vec3& u, double k_e) {
  require_positive_ke(k_e, "ambient_field");
  return detail::ambient_field_unchecked(s, u, k_e);
}

void require_reference(const Mat3& r0) {
  const double res = so3_residual(r0);
  if (!(res <= kTolSo3)) {
    std::ostringstream os;
    os << "reference attitude is not a rotation (residual " << res << ")";
    throw Error(ErrorCode::kInvalidReference, os.str());
  }
}

Mat3 z_transform(const Mat3& r, const Mat3& r0) {
  require_reference(r0);
  return transpose(r0) * r - Mat3::identity();
}

LinearizedState linearized_field(const LinearizedState& ls, const Vec3& u,
                                 double k_e) {
  require_positive_ke(k_e, "linearized_field");
  return {-2.0 * k_e * ls.zs, ls.omega, u};
}

}  // namespace attitude
