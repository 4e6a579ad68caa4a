#include "attitude/attitude.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "attitude/checks.hpp"
#include "attitude/error.hpp"
#include "attitude/integrator.hpp"
#include "attitude/lyapunov.hpp"
#include "attitude/scenario.hpp"

struct att_config_t {
  attitude::ScenarioConfig cfg;
};

struct att_trajectory_t {
  std::vector<attitude::TrajectoryRow> rows;
};

struct att_sweep_t {
  attitude::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

att_status to_status(attitude::ErrorCode code) {
  using attitude::ErrorCode;
  switch (code) {
    case ErrorCode::kNotSkew: return ATT_ERR_NOT_SKEW;
    case ErrorCode::kNotUnitAxis: return ATT_ERR_NOT_UNIT_AXIS;
    case ErrorCode::kInvalidReference: return ATT_ERR_INVALID_REFERENCE;
    case ErrorCode::kOffManifold: return ATT_ERR_OFF_MANIFOLD;
    case ErrorCode::kNonPositiveGain: return ATT_ERR_NON_POSITIVE_GAIN;
    case ErrorCode::kInvalidGains: return ATT_ERR_INVALID_GAINS;
    case ErrorCode::kNonFiniteState: return ATT_ERR_NON_FINITE_STATE;
    case ErrorCode::kInvalidConfig: return ATT_ERR_INVALID_CONFIG;
    case ErrorCode::kParse: return ATT_ERR_PARSE;
    case ErrorCode::kIo: return ATT_ERR_IO;
    case ErrorCode::kInvalidArgument: return ATT_ERR_INVALID_ARGUMENT;
  }
  return ATT_ERR_INTERNAL;
}

att_status fail(att_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs f, translating exceptions into status codes.
template <class F>
att_status try_(F&& f) {
  g_last_error.clear();
  try {
    f();
    return ATT_OK;
  } catch (const attitude::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ATT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ATT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ATT_ERR_INTERNAL, "unknown exception");
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (p == nullptr)
    throw attitude::Error(attitude::ErrorCode::kInvalidArgument,
                          std::string(what) + " must not be NULL");
  return *p;
}

const char* str(const char* p, const char* what) {
  return &deref(p, what);
}

attitude::Mat3 mat_from(const double* r, const char* what) {
  deref(r, what);
  attitude::Mat3 m;
  std::memcpy(m.a.data(), r, 9 * sizeof(double));
  return m;
}

attitude::Vec3 vec_from(const double* v, const char* what) {
  deref(v, what);
  return {v[0], v[1], v[2]};
}

att_outcome to_outcome(attitude::Outcome o) {
  switch (o) {
    case attitude::Outcome::kE1: return ATT_OUTCOME_E1;
    case attitude::Outcome::kE2: return ATT_OUTCOME_E2;
    case attitude::Outcome::kNone: return ATT_OUTCOME_NONE;
    case attitude::Outcome::kDiverged: return ATT_OUTCOME_DIVERGED;
  }
  return ATT_OUTCOME_NONE;
}

}  // namespace

extern "C" {

const char* att_version(void) { return "1.0.0"; }

const char* att_status_string(att_status status) {
  switch (status) {
    case ATT_OK: return "ok";
    case ATT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ATT_ERR_NOT_SKEW: return "matrix is not skew-symmetric";
    case ATT_ERR_NOT_UNIT_AXIS: return "axis is not unit length";
    case ATT_ERR_INVALID_REFERENCE: return "reference is not a rotation";
    case ATT_ERR_OFF_MANIFOLD: return "state is off the manifold";
    case ATT_ERR_NON_POSITIVE_GAIN: return "gain must be positive";
    case ATT_ERR_INVALID_GAINS: return "invalid gains";
    case ATT_ERR_NON_FINITE_STATE: return "non-finite state";
    case ATT_ERR_INVALID_CONFIG: return "invalid configuration";
    case ATT_ERR_PARSE: return "parse error";
    case ATT_ERR_IO: return "i/o error";
    case ATT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* att_last_error(void) { return g_last_error.c_str(); }

att_status att_config_builtin(const char* name, att_config* out) {
  return try_([&] {
    deref(out, "out") = nullptr;
    auto cfg = std::make_unique<att_config_t>();
    cfg->cfg = attitude::builtin_scenario(str(name, "name"));
    *out = cfg.release();
  });
}

att_status att_config_load(const char* path, att_config* out) {
  return try_([&] {
    deref(out, "out") = nullptr;
    auto cfg = std::make_unique<att_config_t>();
    cfg->cfg = attitude::load_config(str(path, "path"));
    *out = cfg.release();
  });
}

att_status att_config_parse(const char* text, att_config* out) {
  return try_([&] {
    deref(out, "out") = nullptr;
    auto cfg = std::make_unique<att_config_t>();
    cfg->cfg = attitude::parse_config(str(text, "text"));
    *out = cfg.release();
  });
}

att_status att_config_set(att_config cfg, const char* key, const char* value) {
  return try_([&] {
    auto& c = deref(cfg, "cfg");
    attitude::ScenarioConfig updated = c.cfg;
    attitude::apply_config_value(updated, str(key, "key"),
                                 str(value, "value"));
    attitude::validate(updated);
    c.cfg = updated;
  });
}

att_status att_config_format(att_config cfg, char* buf, size_t size,
                             size_t* needed) {
  return try_([&] {
    const std::string text = attitude::format_config(deref(cfg, "cfg").cfg);
    if (needed) *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (size < text.size() + 1)
      throw attitude::Error(attitude::ErrorCode::kInvalidArgument,
                            "buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

att_status att_config_destroy(att_config cfg) {
  return try_([&] { delete cfg; });
}

att_status att_simulate(att_config cfg, att_trajectory* out,
                        double* last_valid_time) {
  return try_([&] {
    deref(out, "out") = nullptr;
    const auto& c = deref(cfg, "cfg");
    try {
      auto traj = std::make_unique<att_trajectory_t>();
      traj->rows = attitude::trajectory_rows(attitude::simulate(c.cfg.sim));
      *out = traj.release();
    } catch (const attitude::NonFiniteStateError& e) {
      if (last_valid_time) *last_valid_time = e.last_valid_time();
      throw;
    }
  });
}

att_status att_trajectory_rows(att_trajectory traj, size_t* rows) {
  return try_([&] { deref(rows, "rows") = deref(traj, "traj").rows.size(); });
}

att_status att_trajectory_row(att_trajectory traj, size_t index, double* row) {
  return try_([&] {
    const auto& t = deref(traj, "traj");
    deref(row, "row");
    if (index >= t.rows.size())
      throw attitude::Error(attitude::ErrorCode::kInvalidArgument,
                            "row index out of range");
    std::memcpy(row, t.rows[index].data(),
                ATT_TRAJECTORY_COLUMNS * sizeof(double));
  });
}

att_status att_trajectory_write_csv(att_trajectory traj, const char* path) {
  return try_([&] {
    attitude::write_file(str(path, "path"),
                         attitude::format_trajectory_csv(deref(traj, "traj").rows));
  });
}

att_status att_trajectory_destroy(att_trajectory traj) {
  return try_([&] { delete traj; });
}

att_status att_sweep_run(att_config cfg, size_t n_trials, unsigned threads,
                         att_sweep* out) {
  return try_([&] {
    deref(out, "out") = nullptr;
    const auto& c = deref(cfg, "cfg");
    auto sweep = std::make_unique<att_sweep_t>();
    sweep->result = attitude::roa_sweep(c.cfg.sim, n_trials, c.cfg.sampler, threads);
    *out = sweep.release();
  });
}

att_status att_sweep_get_counts(att_sweep sweep, att_sweep_counts* counts) {
  return try_([&] {
    const auto& r = deref(sweep, "sweep").result;
    auto& c = deref(counts, "counts");
    c.trials = r.trials.size();
    c.e1 = r.count(attitude::Outcome::kE1);
    c.e2 = r.count(attitude::Outcome::kE2);
    c.none = r.count(attitude::Outcome::kNone);
    c.diverged = r.count(attitude::Outcome::kDiverged);
  });
}

att_status att_sweep_trial(att_sweep sweep, size_t index, att_trial* trial) {
  return try_([&] {
    const auto& r = deref(sweep, "sweep").result;
    auto& t = deref(trial, "trial");
    if (index >= r.trials.size())
      throw attitude::Error(attitude::ErrorCode::kInvalidArgument,
                            "trial index out of range");
    const auto& s = r.trials[index];
    t.seed = s.seed;
    t.initial_distance = s.initial_distance;
    t.outcome = to_outcome(s.outcome);
    t.final_err_r = s.final_err_r;
    t.final_err_omega = s.final_err_omega;
  });
}

att_status att_sweep_write_csv(att_sweep sweep, const char* path) {
  return try_([&] {
    attitude::write_file(str(path, "path"),
                         attitude::format_sweep_csv(deref(sweep, "sweep").result));
  });
}

att_status att_sweep_destroy(att_sweep sweep) {
  return try_([&] { delete sweep; });
}

void att_check_options_default(att_check_options* options) {
  if (options == nullptr) return;
  const attitude::CheckOptions defaults;
  options->seed = defaults.seed;
  options->flip_correction_sign = 0;
  options->override_epsilon = 0;
  options->epsilon = 0.0;
}

att_status att_run_checks(const att_check_options* options,
                          att_check_callback callback, void* user,
                          int* all_passed) {
  return try_([&] {
    attitude::CheckOptions opts;
    if (options) {
      opts.seed = options->seed;
      opts.flip_correction_sign = options->flip_correction_sign != 0;
      if (options->override_epsilon) opts.epsilon_override = options->epsilon;
    }
    bool ok = true;
    for (const auto& r : attitude::run_checks(opts)) {
      ok = ok && r.passed;
      if (callback) callback(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

att_status att_max_epsilon(double k_p, double k_d, double* out) {
  return try_([&] { deref(out, "out") = attitude::max_epsilon(k_p, k_d); });
}

att_status att_manifold_distance(const double* r, double* out) {
  return try_([&] {
    deref(out, "out") = attitude::manifold_distance(mat_from(r, "r"));
  });
}

att_status att_v_tilde(const double* r, double k_e, double* out) {
  return try_([&] { deref(out, "out") = attitude::v_tilde(mat_from(r, "r"), k_e); });
}

att_status att_height_w(const double* r, const double* omega, const double* r0,
                        const double* gains, double* out) {
  return try_([&] {
    deref(gains, "gains");
    const attitude::Gains g{gains[0], gains[1], gains[2], gains[3]};
    deref(out, "out") = attitude::height_w(
        {mat_from(r, "r"), vec_from(omega, "omega")}, mat_from(r0, "r0"), g);
  });
}

att_status att_classify(const double* r, const double* omega, const double* r0,
                        double tol, att_outcome* out) {
  return try_([&] {
    const auto cls = attitude::classify_e_set(
        {mat_from(r, "r"), vec_from(omega, "omega")}, mat_from(r0, "r0"), tol);
    auto& o = deref(out, "out");
    switch (cls.tag) {
      case attitude::ESet::kE1: o = ATT_OUTCOME_E1; break;
      case attitude::ESet::kE2: o = ATT_OUTCOME_E2; break;
      case attitude::ESet::kNotInE: o = ATT_OUTCOME_NONE; break;
    }
  });
}

}  // extern "C"
