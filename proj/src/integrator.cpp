#include "attitude/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "attitude/error.hpp"
#include "attitude/random.hpp"

namespace attitude {
namespace {

// Stream tags keep the noise and initial-state draws of one seed apart.
constexpr std::uint32_t kNoiseStream = 0x6e6f6973;
constexpr std::uint32_t kSamplerStream = 0x73616d70;

std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream,
                            std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

AmbientState axpy(const AmbientState& s, double h, const AmbientDeriv& d) {
  return {s.R + h * d.dR, s.omega + h * d.domega};
}

bool is_finite(const AmbientState& s) {
  return attitude::is_finite(s.R) && attitude::is_finite(s.omega);
}

void config_error(const std::string& msg) {
  throw Error(ErrorCode::kInvalidConfig, msg);
}

}  // namespace

const char* to_string(Method m) {
  return m == Method::kEuler ? "euler" : "rk4";
}

const char* to_string(ControlHold h) {
  return h == ControlHold::kPerStage ? "stage" : "zoh";
}

const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::kFixed: return "fixed";
    case SamplerKind::kAdmissible: return "admissible";
    case SamplerKind::kPerturb: return "perturb";
  }
  return "fixed";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kE1: return "E1";
    case Outcome::kE2: return "E2";
    case Outcome::kNone: return "none";
    case Outcome::kDiverged: return "diverged";
  }
  return "none";
}

AmbientState step(const AmbientState& s, const AmbientState& measured,
                  double dt, const StepModel& model) {
  const double gain = model.correction_scale * model.gains.k_e;
  const Mat3 offset_r = measured.R - s.R;
  const Vec3 offset_w = measured.omega - s.omega;
  const Vec3 held = pd_control(measured, model.r0, model.gains);

  auto field = [&](const AmbientState& x) {
    const Vec3 u = model.hold == ControlHold::kZeroOrder
                       ? held
                       : pd_control({x.R + offset_r, x.omega + offset_w},
                                    model.r0, model.gains);
    return detail::ambient_field_unchecked(x, u, gain);
  };

  AmbientState next;
  if (model.method == Method::kEuler) {
    next = axpy(s, dt, field(s));
  } else {
    const AmbientDeriv k1 = field(s);
    const AmbientDeriv k2 = field(axpy(s, 0.5 * dt, k1));
    const AmbientDeriv k3 = field(axpy(s, 0.5 * dt, k2));
    const AmbientDeriv k4 = field(axpy(s, dt, k3));
    const double h6 = dt / 6.0;
    next.R = s.R + h6 * (k1.dR + 2.0 * k2.dR + 2.0 * k3.dR + k4.dR);
    next.omega = s.omega + h6 * (k1.domega + 2.0 * k2.domega +
                                 2.0 * k3.domega + k4.domega);
  }
  if (!is_finite(next)) {
    throw NonFiniteStateError(0.0, "integration step produced a non-finite state");
  }
  return next;
}

AmbientState measure(const AmbientState& truth, double noise_rel,
                     std::uint64_t seed, std::uint64_t step_index) {
  if (noise_rel == 0.0) return truth;
  std::mt19937_64 rng = make_engine(seed, kNoiseStream, step_index);
  std::normal_distribution<double> normal;
  const double sd_r = noise_rel * frob_norm(truth.R);
  const double sd_w = noise_rel * norm(truth.omega);
  AmbientState out = truth;
  for (double& x : out.R.a) x += sd_r * normal(rng);
  for (std::size_t i = 0; i < 3; ++i) out.omega[i] += sd_w * normal(rng);
  return out;
}

void validate(const SimConfig& cfg) {
  require_reference(cfg.r0);
  require_valid_gains(cfg.gains);
  if (!is_finite(cfg.r_init) || !is_finite(cfg.omega_init))
    config_error("initial state must be finite");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) config_error("dt must be > 0");
  if (!(cfg.t_end >= cfg.dt) || !std::isfinite(cfg.t_end))
    config_error("t_end must be >= dt");
  if (!(cfg.noise_rel >= 0.0) || !std::isfinite(cfg.noise_rel))
    config_error("noise_rel must be >= 0");
  if (cfg.record_every == 0) config_error("record_every must be >= 1");
  if (!std::isfinite(cfg.correction_scale))
    config_error("correction_scale must be finite");
}

std::size_t step_count(const SimConfig& cfg) {
  const double ratio = cfg.t_end / cfg.dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
    return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(ratio));
}

TrajectoryRecord simulate(const SimConfig& cfg) {
  validate(cfg);
  const StepModel model = cfg.model();
  const std::size_t n = step_count(cfg);

  TrajectoryRecord record;
  record.samples.reserve(n / cfg.record_every + 2);

  AmbientState state{cfg.r_init, cfg.omega_init};
  for (std::size_t k = 0;; ++k) {
    const AmbientState measured = measure(state, cfg.noise_rel, cfg.seed, k);
    if (k % cfg.record_every == 0 || k == n) {
      Sample smp;
      smp.t = static_cast<double>(k) * cfg.dt;
      smp.state = state;
      smp.u_norm = norm(pd_control(measured, cfg.r0, cfg.gains));
      smp.err_r = frob_norm(state.R - cfg.r0);
      smp.err_omega = norm(state.omega);
      smp.v_tilde = v_tilde(state.R, cfg.gains.k_e);
      smp.w = height_w(state, cfg.r0, cfg.gains);
      smp.w_dot_bound = w_dot_bound(state, cfg.r0, cfg.gains);
      record.samples.push_back(smp);
    }
    if (k == n) break;
    try {
      state = step(state, measured, cfg.dt, model);
    } catch (const NonFiniteStateError&) {
      const double t_last = static_cast<double>(k) * cfg.dt;
      std::ostringstream os;
      os.precision(17);
      os << "non-finite state after t = " << t_last
         << " (last valid time " << t_last << ")";
      throw NonFiniteStateError(t_last, os.str());
    }
  }
  return record;
}

AmbientState sample_initial_state(const SimConfig& base,
                                  const SamplerSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng = make_engine(seed, kSamplerStream, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (spec.kind) {
    case SamplerKind::kFixed:
      return {base.r_init, base.omega_init};

    case SamplerKind::kPerturb: {
      const Vec3 axis = random::unit_vector(rng);
      return {base.r_init * rodrigues_exp(axis, spec.angle), base.omega_init};
    }

    case SamplerKind::kAdmissible: {
      if (!(spec.delta_max > 0.0) || !(spec.delta_max < std::sqrt(1.0 / 3.0)))
        config_error("sampler delta_max must lie in (0, sqrt(1/3))");
      if (!(spec.omega_max >= 0.0)) config_error("sampler omega_max must be >= 0");
      const Mat3 r = random::near_rotation(rng, spec.delta_max);
      const double radius = spec.omega_max * std::cbrt(unit(rng));
      return {r, radius * random::unit_vector(rng)};
    }
  }
  return {base.r_init, base.omega_init};
}

std::size_t SweepResult::count(Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(),
                    [o](const TrialSummary& t) { return t.outcome == o; }));
}

SweepResult roa_sweep(const SimConfig& base, std::size_t n_trials,
                      const SamplerSpec& spec, unsigned threads) {
  if (n_trials == 0) config_error("n_trials must be >= 1");
  validate(base);

  SweepResult result;
  result.trials.resize(n_trials);

  auto run_trial = [&](std::size_t i) {
    SimConfig cfg = base;
    cfg.seed = base.seed + i;
    const AmbientState init = sample_initial_state(base, spec, cfg.seed);
    cfg.r_init = init.R;
    cfg.omega_init = init.omega;
    cfg.record_every = std::max<std::size_t>(1, step_count(cfg));

    TrialSummary& out = result.trials[i];
    out.seed = cfg.seed;
    out.initial_distance = manifold_distance(init.R);
    try {
      const TrajectoryRecord rec = simulate(cfg);
      const Sample& last = rec.samples.back();
      out.final_err_r = last.err_r;
      out.final_err_omega = last.err_omega;
      try {
        switch (classify_e_set(last.state, cfg.r0).tag) {
          case ESet::kE1: out.outcome = Outcome::kE1; break;
          case ESet::kE2: out.outcome = Outcome::kE2; break;
          case ESet::kNotInE: out.outcome = Outcome::kNone; break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kOffManifold) throw;
        out.outcome = Outcome::kNone;
      }
    } catch (const NonFiniteStateError&) {
      out.outcome = Outcome::kDiverged;
      out.final_err_r = std::nan("");
      out.final_err_omega = std::nan("");
    }
  };

  unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(
      std::clamp<std::size_t>(workers, 1, n_trials));

  if (workers == 1) {
    for (std::size_t i = 0; i < n_trials; ++i) run_trial(i);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_trials; i = next++) {
          try {
            run_trial(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace attitude
