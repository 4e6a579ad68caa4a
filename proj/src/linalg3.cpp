#include "attitude/linalg3.hpp"

#include <algorithm>
#include <sstream>

#include "attitude/error.hpp"

namespace attitude {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSkew: return "NotSkew";
    case ErrorCode::kNotUnitAxis: return "NotUnitAxis";
    case ErrorCode::kInvalidReference: return "InvalidReference";
    case ErrorCode::kOffManifold: return "OffManifold";
    case ErrorCode::kNonPositiveGain: return "NonPositiveGain";
    case ErrorCode::kInvalidGains: return "InvalidGains";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

bool is_finite(const Mat3& m) {
  return std::all_of(m.a.begin(), m.a.end(),
                     [](double x) { return std::isfinite(x); });
}

double skew_tolerance(const Mat3& m) {
  return 1e-9 * std::max(1.0, frob_norm(m));
}

Vec3 vee(const Mat3& m) {
  const double asym = frob_norm(m + transpose(m));
  if (!(asym <= skew_tolerance(m))) {
    std::ostringstream os;
    os << "vee: matrix is not skew-symmetric (||A + A^T|| = " << asym << ")";
    throw Error(ErrorCode::kNotSkew, os.str());
  }
  return skew_vee(m);
}

Mat3 rodrigues_exp(const Vec3& axis, double angle) {
  const double n = norm(axis);
  if (!(std::abs(n - 1.0) <= kTolUnit) || !std::isfinite(angle)) {
    std::ostringstream os;
    os << "rodrigues_exp: axis must be unit length (got norm " << n << ")";
    throw Error(ErrorCode::kNotUnitAxis, os.str());
  }
  const Mat3 k = hat(axis);
  return Mat3::identity() + std::sin(angle) * k +
         (1.0 - std::cos(angle)) * (k * k);
}

double so3_residual(const Mat3& r) {
  const double orth = frob_norm(transpose(r) * r - Mat3::identity());
  return std::max(orth, std::abs(det(r) - 1.0));
}

}  // namespace attitude
