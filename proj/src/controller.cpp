#include "attitude/controller.hpp"

#include <cmath>
#include <sstream>

#include "attitude/error.hpp"

namespace attitude {

double max_epsilon(double k_p, double k_d) {
  if (!(k_p > 0.0) || !(k_d > 0.0) || !std::isfinite(k_p) ||
      !std::isfinite(k_d)) {
    std::ostringstream os;
    os << "max_epsilon: k_p and k_d must be positive (got k_p=" << k_p
       << ", k_d=" << k_d << ")";
    throw Error(ErrorCode::kNonPositiveGain, os.str());
  }
  return 4.0 * k_p * k_d / (4.0 * k_p + k_d * k_d);
}

double default_epsilon(double k_p, double k_d) {
  return 0.99 * max_epsilon(k_p, k_d);
}

std::string GainsReport::message() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

GainsReport validate_gains(const Gains& g) {
  GainsReport report;
  auto positive = [&](double value, const char* name) {
    if (!std::isfinite(value) || !(value > 0.0)) {
      std::ostringstream os;
      os << name << " must be strictly positive (got " << value << ")";
      report.violations.push_back(os.str());
      return false;
    }
    return true;
  };
  positive(g.k_e, "k_e");
  const bool kp_ok = positive(g.k_p, "k_p");
  const bool kd_ok = positive(g.k_d, "k_d");

  if (!std::isfinite(g.epsilon) || !(g.epsilon > 0.0)) {
    std::ostringstream os;
    os << "epsilon must be strictly positive (got " << g.epsilon << ")";
    report.violations.push_back(os.str());
  } else if (kp_ok && kd_ok) {
    const double bound = max_epsilon(g.k_p, g.k_d);
    if (!(g.epsilon < bound)) {
      std::ostringstream os;
      os.precision(17);
      os << "epsilon not strictly below the window 4*k_p*k_d/(4*k_p+k_d^2) = "
         << bound << " (got " << g.epsilon << ")";
      report.violations.push_back(os.str());
    }
  }
  return report;
}

void require_valid_gains(const Gains& g) {
  const GainsReport report = validate_gains(g);
  if (!report.ok()) throw Error(ErrorCode::kInvalidGains, report.message());
}

Vec3 pd_control(const AmbientState& s, const Mat3& r0, const Gains& g) {
  const Mat3 z = z_transform(s.R, r0);
  return -g.k_p * skew_vee(z) - g.k_d * s.omega;
}

AmbientDeriv closed_loop_field(const AmbientState& s, const Mat3& r0,
                               const Gains& g) {
  return ambient_field(s, pd_control(s, r0, g), g.k_e);
}

}  // namespace attitude
