#include "attitude/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "attitude/error.hpp"
#include "attitude/integrator.hpp"
#include "attitude/lyapunov.hpp"
#include "attitude/random.hpp"

namespace attitude {
namespace {

using Engine = random::Engine;

const Gains kScenarioGains{1.0, 4.0, 2.0, 1.584};

std::string describe(const char* what, double value, double limit) {
  std::ostringstream os;
  os.precision(3);
  os << what << " = " << value << " (limit " << limit << ")";
  return os.str();
}

AmbientState random_on_manifold(Engine& rng, const Mat3& r0) {
  return {r0 * random::rotation(rng), random::vector(rng, 1.0)};
}

CheckResult check_gradient(Engine& rng) {
  constexpr double kStep = 1e-6;
  constexpr double kLimit = 1e-6;
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Mat3 r = random::near_rotation(rng, 0.5);
    const double k_e = 1.0;
    const Mat3 analytic = grad_v_tilde(r, k_e);
    Mat3 numeric;
    for (std::size_t i = 0; i < 9; ++i) {
      Mat3 up = r, down = r;
      up.a[i] += kStep;
      down.a[i] -= kStep;
      numeric.a[i] = (v_tilde(up, k_e) - v_tilde(down, k_e)) / (2.0 * kStep);
    }
    const double scale = std::max(frob_norm(analytic), 1e-12);
    worst = std::max(worst, frob_norm(numeric - analytic) / scale);
  }
  return {"gradient_fd", worst < kLimit,
          describe("max relative error", worst, kLimit)};
}

CheckResult check_trace_identities(Engine& rng) {
  constexpr double kLimit = 1e-12;
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Mat3 zs = random::symmetric(rng);
    const Mat3 zk = random::skew(rng);
    const Vec3 omega = random::vector(rng);
    const Vec3 z = skew_vee(zk);
    const Mat3 w = hat(omega);
    const Mat3 bracket = hat(cross(z, omega));
    const double residuals[] = {
        frob_inner(zs, zs * w),
        frob_inner(zs, w * zs),
        frob_inner(zs, bracket),
        frob_inner(zk, bracket),
        dot(omega, cross(z, omega)),
        frob_inner(zk, w) - 2.0 * dot(z, omega),
        frob_inner(zk, 0.5 * (zs * w + w * zs)) + frob_inner(zs, zk * w),
        dot(skew_vee(zs * w + w * zs), omega) - trace(transpose(w) * zs * w),
    };
    for (double r : residuals) worst = std::max(worst, std::abs(r));
  }
  return {"trace_identities", worst <= kLimit,
          describe("max |residual|", worst, kLimit)};
}

AmbientState flow(const AmbientState& s, double h, const Mat3& r0,
                  const Gains& g) {
  auto f = [&](const AmbientState& x) { return closed_loop_field(x, r0, g); };
  auto add = [](const AmbientState& x, double c, const AmbientDeriv& d) {
    return AmbientState{x.R + c * d.dR, x.omega + c * d.domega};
  };
  const AmbientDeriv k1 = f(s);
  const AmbientDeriv k2 = f(add(s, 0.5 * h, k1));
  const AmbientDeriv k3 = f(add(s, 0.5 * h, k2));
  const AmbientDeriv k4 = f(add(s, h, k3));
  return {s.R + (h / 6.0) * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR),
          s.omega + (h / 6.0) * (k1.domega + 2.0 * k2.domega +
                                 2.0 * k3.domega + k4.domega)};
}

CheckResult check_w_dot(Engine& rng) {
  constexpr double kStep = 1e-5;
  constexpr double kLimit = 1e-4;
  double worst = 0.0;
  double worst_gap = -1e300;
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const AmbientState s = random_on_manifold(rng, r0);
    const Gains& g = kScenarioGains;
    const double analytic = w_dot_analytic(s, r0, g);
    const double numeric = (height_w(flow(s, kStep, r0, g), r0, g) -
                            height_w(flow(s, -kStep, r0, g), r0, g)) /
                           (2.0 * kStep);
    worst = std::max(worst, std::abs(numeric - analytic) /
                                std::max(std::abs(analytic), 1e-12));
    worst_gap = std::max(worst_gap, analytic - w_dot_bound(s, r0, g));
  }
  std::ostringstream os;
  os << describe("max relative error", worst, kLimit)
     << ", max(analytic - bound) = " << worst_gap;
  return {"w_dot_fd", worst < kLimit && worst_gap <= 1e-12, os.str()};
}

CheckResult check_zs_nsd(Engine& rng) {
  double worst = -1e300;
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const Mat3 r = r0 * random::rotation(rng);
    const Mat3 zs = sym_skew_split(z_transform(r, r0)).sym;
    for (int k = 0; k < 1000; ++k) {
      const Vec3 x = random::unit_vector(rng);
      worst = std::max(worst, dot(x, zs * x));
    }
  }
  return {"z_s_nsd", worst <= 1e-12, describe("max x^T Z_s x", worst, 1e-12)};
}

CheckResult check_z_dynamics(Engine& rng) {
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const AmbientState s = random_on_manifold(rng, r0);
    const ZDynamics zd = z_dynamics_on_manifold(s, r0, kScenarioGains);
    const AmbientDeriv d = closed_loop_field(s, r0, kScenarioGains);
    worst = std::max(worst, frob_norm(zd.dzs + zd.dzk - transpose(r0) * d.dR));
    worst = std::max(worst, norm(zd.domega - d.domega));
  }
  return {"z_dynamics", worst <= 1e-12,
          describe("max |Z-chart - ambient|", worst, 1e-12)};
}

CheckResult check_diag_dominance(Engine& rng) {
  constexpr double kChi = 0.57;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  for (int n = 0; n < 100000; ++n) {
    Mat3 p;
    for (double& x : p.a) x = normal(rng);
    const double radius = kChi * std::pow(unit(rng), 1.0 / 9.0);
    const Mat3 a = Mat3::identity() + (radius / frob_norm(p)) * p;
    if (!(frob_norm(a - Mat3::identity()) <= kChi) ||
        !strictly_diagonally_dominant(a) || !diag_dominance_holds(a, kChi))
      ++failures;
  }
  std::ostringstream os;
  os << failures << " counterexamples in 100000 draws with ||A - I|| <= " << kChi;
  return {"diag_dominance", failures == 0, os.str()};
}

// Smallest eigenvalue of the quadratic form in (||Omega||, ||Z_k^vee||) whose
// negation bounds dW/dt.
double window_min_eigenvalue(const Gains& g) {
  const double a = g.k_d - g.epsilon;
  const double c = g.epsilon * g.k_p;
  const double b = 0.5 * g.epsilon * g.k_d;
  return 0.5 * (a + c) - std::hypot(0.5 * (a - c), b);
}

bool window_positive_definite(const Gains& g) {
  const double a = g.k_d - g.epsilon;
  const double c = g.epsilon * g.k_p;
  const bool disc_ok = g.epsilon * g.epsilon * g.k_d * g.k_d < 4.0 * a * c;
  return disc_ok && window_min_eigenvalue(g) > 1e-12 * (std::abs(a) + std::abs(c));
}

CheckResult check_epsilon_window(Engine& rng, const CheckOptions& options) {
  Gains scenario = kScenarioGains;
  scenario.epsilon = options.epsilon_override.value_or(default_epsilon(4.0, 2.0));
  std::ostringstream os;
  bool ok = window_positive_definite(scenario);
  os << "k_p=4 k_d=2 eps=" << scenario.epsilon
     << " min eigenvalue=" << window_min_eigenvalue(scenario);

  std::uniform_real_distribution<double> gain(0.1, 10.0);
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  int failures = 0;
  for (int n = 0; n < 1000; ++n) {
    Gains g{1.0, gain(rng), gain(rng), 0.0};
    g.epsilon = frac(rng) * max_epsilon(g.k_p, g.k_d);
    if (!window_positive_definite(g)) ++failures;
  }
  os << ", random gains failures=" << failures << "/1000";
  return {"epsilon_window", ok && failures == 0, os.str()};
}

CheckResult check_e_set_levels(Engine& rng) {
  const Gains& g = kScenarioGains;
  double worst = 0.0;
  bool tags_ok = true;
  for (int n = 0; n < 100; ++n) {
    const Mat3 r0 = random::rotation(rng);
    const AmbientState e1{r0, {}};
    const AmbientState e2{r0 * rodrigues_exp(random::unit_vector(rng), M_PI), {}};
    worst = std::max(worst, std::abs(height_w(e1, r0, g)));
    worst = std::max(worst, std::abs(height_w(e2, r0, g) - 2.0 * g.k_p));
    tags_ok = tags_ok && classify_e_set(e1, r0).tag == ESet::kE1 &&
              classify_e_set(e2, r0).tag == ESet::kE2;
  }
  std::ostringstream os;
  os << describe("max level error", worst, 1e-9)
     << (tags_ok ? ", classification ok" : ", classification mismatch");
  return {"e_set_levels", worst <= 1e-9 && tags_ok, os.str()};
}

CheckResult check_v_tilde_descent(Engine& rng, const CheckOptions& options) {
  SimConfig cfg;
  cfg.gains = kScenarioGains;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  cfg.record_every = 10;
  cfg.correction_scale = options.flip_correction_sign ? -1.0 : 1.0;
  const double slack = 10.0 * cfg.dt * cfg.dt;
  const double delta = admissible_region(cfg.gains.k_e).delta;

  double worst = -1e300;
  bool diverged = false;
  for (int n = 0; n < 20; ++n) {
    cfg.r_init = random::near_rotation(rng, delta);
    cfg.omega_init = random::vector(rng, 1.0);
    try {
      const TrajectoryRecord rec = simulate(cfg);
      for (std::size_t i = 1; i < rec.samples.size(); ++i)
        worst = std::max(worst, rec.samples[i].v_tilde - rec.samples[i - 1].v_tilde);
    } catch (const NonFiniteStateError&) {
      diverged = true;
    }
  }
  std::ostringstream os;
  os << describe("max per-sample increase", worst, slack);
  if (diverged) os << ", trajectory diverged";
  return {"v_tilde_descent", !diverged && worst <= slack, os.str()};
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  Engine rng(options.seed);
  std::vector<CheckResult> out;
  auto guarded = [&](const char* name, const std::function<CheckResult()>& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  guarded("gradient_fd", [&] { return check_gradient(rng); });
  guarded("trace_identities", [&] { return check_trace_identities(rng); });
  guarded("w_dot_fd", [&] { return check_w_dot(rng); });
  guarded("z_s_nsd", [&] { return check_zs_nsd(rng); });
  guarded("z_dynamics", [&] { return check_z_dynamics(rng); });
  guarded("diag_dominance", [&] { return check_diag_dominance(rng); });
  guarded("epsilon_window", [&] { return check_epsilon_window(rng, options); });
  guarded("e_set_levels", [&] { return check_e_set_levels(rng); });
  guarded("v_tilde_descent", [&] { return check_v_tilde_descent(rng, options); });
  return out;
}

}  // namespace attitude
