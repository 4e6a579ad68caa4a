#pragma once

// Self-contained numerical verification suite run by `attitude_sim check`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace attitude {

struct CheckOptions {
  std::uint64_t seed = 20240611;
  /// Mutation hook: integrate with the manifold-attraction term negated.
  bool flip_correction_sign = false;
  /// Mutation hook: epsilon used for the k_p = 4, k_d = 2 window check.
  std::optional<double> epsilon_override;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs, in order: gradient_fd, trace_identities, w_dot_fd, z_s_nsd,
/// z_dynamics, diag_dominance, epsilon_window, e_set_levels, v_tilde_descent.
std::vector<CheckResult> run_checks(const CheckOptions& options = {});

}  // namespace attitude
