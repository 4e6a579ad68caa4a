#pragma once

#include <string>
#include <vector>

#include "attitude/dynamics.hpp"

namespace attitude {

/// Controller and analysis constants. epsilon only enters the height
/// function and its derivative bound; the control law does not use it.
struct Gains {
  double k_e = 1.0;
  double k_p = 4.0;
  double k_d = 2.0;
  double epsilon = 1.584;
};

/// Upper end of the admissible epsilon window: 4 k_p k_d / (4 k_p + k_d^2).
/// Throws Error(kNonPositiveGain) unless k_p, k_d > 0.
double max_epsilon(double k_p, double k_d);

/// 0.99 * max_epsilon(k_p, k_d).
double default_epsilon(double k_p, double k_d);

struct GainsReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string message() const;
};

GainsReport validate_gains(const Gains& g);

/// Throws Error(kInvalidGains) with the joined report when validation fails.
void require_valid_gains(const Gains& g);

/// u = -k_p (Z_k)^vee - k_d Omega with Z = R0^T R - I. The state is the
/// measured one, which may be noisy and off the manifold.
Vec3 pd_control(const AmbientState& s, const Mat3& r0, const Gains& g);

/// Closed-loop ambient vector field with the control evaluated on s itself.
AmbientDeriv closed_loop_field(const AmbientState& s, const Mat3& r0,
                               const Gains& g);

}  // namespace attitude
