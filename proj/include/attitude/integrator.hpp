#pragma once

// Fixed-step integration of the closed-loop ambient system with optional
// measurement noise. Monte-Carlo region-of-attraction sweeps build on it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "attitude/controller.hpp"
#include "attitude/lyapunov.hpp"

namespace attitude {

enum class Method { kEuler, kRk4 };

/// How the control input is treated inside one integration step.
///
/// kPerStage re-evaluates the feedback law at every Runge-Kutta stage on the
/// stage state plus the measurement error drawn for that step, so noise-free
/// runs integrate the exact closed loop. kZeroOrder freezes u at its value on
/// the measured state at the start of the step.
enum class ControlHold { kPerStage, kZeroOrder };

const char* to_string(Method m);
const char* to_string(ControlHold h);

/// Everything one step needs besides the state itself.
struct StepModel {
  Mat3 r0 = Mat3::diag(-1.0, -1.0, 1.0);
  Gains gains{};
  Method method = Method::kRk4;
  ControlHold hold = ControlHold::kPerStage;
  /// Multiplies the manifold-attraction term; only tests change it.
  double correction_scale = 1.0;
};

/// Advances the true state s by dt. The controller sees `measured`; the
/// manifold-attraction term always acts on the true state.
/// Throws NonFiniteStateError if the result contains inf or nan.
AmbientState step(const AmbientState& s, const AmbientState& measured,
                  double dt, const StepModel& model);

/// Measured copy of `truth`: every entry gets zero-mean Gaussian noise with
/// standard deviation noise_rel * ||R|| (entries of R) or noise_rel *
/// ||Omega|| (entries of Omega). The stream depends only on (seed, step).
AmbientState measure(const AmbientState& truth, double noise_rel,
                     std::uint64_t seed, std::uint64_t step_index);

struct SimConfig {
  Mat3 r0 = Mat3::diag(-1.0, -1.0, 1.0);
  Mat3 r_init = Mat3::identity();
  Vec3 omega_init{};
  Gains gains{};
  double dt = 1e-3;
  double t_end = 20.0;
  Method method = Method::kRk4;
  ControlHold hold = ControlHold::kPerStage;
  double noise_rel = 0.0;
  std::uint64_t seed = 0;
  std::size_t record_every = 10;
  double correction_scale = 1.0;

  StepModel model() const {
    return {r0, gains, method, hold, correction_scale};
  }
};

/// Throws Error(kInvalidConfig), Error(kInvalidGains) or
/// Error(kInvalidReference) describing the first problem found.
void validate(const SimConfig& cfg);

/// Number of integration steps covering [0, t_end].
std::size_t step_count(const SimConfig& cfg);

struct Sample {
  double t = 0.0;
  AmbientState state;
  double u_norm = 0.0;
  double err_r = 0.0;
  double err_omega = 0.0;
  double v_tilde = 0.0;
  double w = 0.0;
  double w_dot_bound = 0.0;
};

struct TrajectoryRecord {
  std::vector<Sample> samples;
};

/// Runs the closed loop from (r_init, omega_init). Samples are taken every
/// record_every steps and at t_end. Diagnostics use the true state; u_norm is
/// the control computed from the measured state at that instant.
TrajectoryRecord simulate(const SimConfig& cfg);

// ---- region-of-attraction sweep ---------------------------------------------

enum class SamplerKind {
  kFixed,       // every trial starts at (r_init, omega_init)
  kAdmissible,  // random R in the admissible region, random Omega in a ball
  kPerturb,     // r_init times a rotation of `angle` about a random axis
};

const char* to_string(SamplerKind k);

struct SamplerSpec {
  SamplerKind kind = SamplerKind::kAdmissible;
  double omega_max = 1.0;
  /// Upper bound on ||R^T R - I|| for admissible draws; must be < sqrt(1/3).
  double delta_max = std::sqrt(1.0 / 3.0) * (1.0 - kAdmissibleMargin);
  double angle = 1e-6;
};

/// Initial state of one trial, seeded independently of the noise stream.
AmbientState sample_initial_state(const SimConfig& base,
                                  const SamplerSpec& spec, std::uint64_t seed);

enum class Outcome { kE1, kE2, kNone, kDiverged };

const char* to_string(Outcome o);

struct TrialSummary {
  std::uint64_t seed = 0;
  double initial_distance = 0.0;
  Outcome outcome = Outcome::kNone;
  double final_err_r = 0.0;
  double final_err_omega = 0.0;
};

struct SweepResult {
  std::vector<TrialSummary> trials;

  std::size_t count(Outcome o) const;
};

/// Runs n_trials simulations; trial i uses seed base.seed + i for both its
/// initial-state draw and its noise stream. Trials run on up to `threads`
/// workers (0 = hardware concurrency); results are ordered by trial index.
SweepResult roa_sweep(const SimConfig& base, std::size_t n_trials,
                      const SamplerSpec& spec, unsigned threads = 0);

}  // namespace attitude
