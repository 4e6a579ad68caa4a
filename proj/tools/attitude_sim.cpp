// attitude_sim: command-line front end over the C interface.
//
// Exit codes:
//   0  success
//   1  `check` found a failing check
//   2  usage or configuration error
//   3  the simulation produced a non-finite state
//   4  file I/O error
//   5  internal error

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "attitude/attitude.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonFinite = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 5;

int exit_code_for(att_status status) {
  switch (status) {
    case ATT_OK: return kExitOk;
    case ATT_ERR_NON_FINITE_STATE: return kExitNonFinite;
    case ATT_ERR_IO: return kExitIo;
    case ATT_ERR_INTERNAL: return kExitInternal;
    default: return kExitUsage;
  }
}

int report(att_status status) {
  std::fprintf(stderr, "attitude_sim: %s: %s\n", att_status_string(status),
               att_last_error());
  return exit_code_for(status);
}

// RAII owners for the C handles.
struct Config {
  att_config h = nullptr;
  ~Config() { att_config_destroy(h); }
};
struct Trajectory {
  att_trajectory h = nullptr;
  ~Trajectory() { att_trajectory_destroy(h); }
};
struct Sweep {
  att_sweep h = nullptr;
  ~Sweep() { att_sweep_destroy(h); }
};

struct SourceOptions {
  std::string scenario;
  std::string config_path;
  std::vector<std::string> overrides;
  long long seed = -1;
};

void add_source_options(CLI::App* cmd, SourceOptions& opts) {
  auto* scenario = cmd->add_option("--scenario", opts.scenario,
                                   "Built-in scenario: ideal, offmanifold, e2")
                       ->check(CLI::IsMember({"ideal", "offmanifold", "e2"}));
  auto* config = cmd->add_option("--config", opts.config_path,
                                 "key = value configuration file");
  scenario->excludes(config);
  cmd->add_option("--set", opts.overrides,
                  "Override one configuration key (key=value); repeatable");
  cmd->add_option("--seed", opts.seed, "RNG seed")->check(CLI::NonNegativeNumber);
}

att_status load_source(const SourceOptions& opts, Config& cfg) {
  att_status st = opts.config_path.empty()
                      ? att_config_builtin(
                            opts.scenario.empty() ? "ideal" : opts.scenario.c_str(),
                            &cfg.h)
                      : att_config_load(opts.config_path.c_str(), &cfg.h);
  if (st != ATT_OK) return st;
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "attitude_sim: --set expects key=value, got '%s'\n",
                   kv.c_str());
      return ATT_ERR_INVALID_ARGUMENT;
    }
    st = att_config_set(cfg.h, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != ATT_OK) return st;
  }
  if (opts.seed >= 0) {
    st = att_config_set(cfg.h, "seed", std::to_string(opts.seed).c_str());
  }
  return st;
}

int run_simulate(const SourceOptions& src, const std::string& out_path) {
  Config cfg;
  if (att_status st = load_source(src, cfg); st != ATT_OK) return report(st);

  Trajectory traj;
  double last_valid = 0.0;
  if (att_status st = att_simulate(cfg.h, &traj.h, &last_valid); st != ATT_OK) {
    if (st == ATT_ERR_NON_FINITE_STATE)
      std::fprintf(stderr, "attitude_sim: last valid time %.17g\n", last_valid);
    return report(st);
  }
  if (att_status st = att_trajectory_write_csv(traj.h, out_path.c_str()); st != ATT_OK)
    return report(st);

  size_t rows = 0;
  att_trajectory_rows(traj.h, &rows);
  std::printf("wrote %zu samples to %s\n", rows, out_path.c_str());
  return kExitOk;
}

int run_sweep(const SourceOptions& src, long long trials, unsigned threads,
              const std::string& out_path) {
  if (trials < 1) {
    std::fprintf(stderr, "attitude_sim: --trials must be >= 1\n");
    return kExitUsage;
  }
  Config cfg;
  if (att_status st = load_source(src, cfg); st != ATT_OK) return report(st);

  Sweep sweep;
  if (att_status st = att_sweep_run(cfg.h, static_cast<size_t>(trials), threads,
                                    &sweep.h);
      st != ATT_OK)
    return report(st);
  if (att_status st = att_sweep_write_csv(sweep.h, out_path.c_str()); st != ATT_OK)
    return report(st);

  att_sweep_counts c{};
  att_sweep_get_counts(sweep.h, &c);
  std::printf("trials=%zu E1=%zu E2=%zu none=%zu diverged=%zu\n", c.trials, c.e1,
              c.e2, c.none, c.diverged);
  return kExitOk;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("[%s] %-18s %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int run_check(long long seed, bool flip, double epsilon, bool override_eps) {
  att_check_options opts;
  att_check_options_default(&opts);
  if (seed >= 0) opts.seed = static_cast<uint64_t>(seed);
  opts.flip_correction_sign = flip ? 1 : 0;
  opts.override_epsilon = override_eps ? 1 : 0;
  opts.epsilon = epsilon;

  int all_passed = 0;
  if (att_status st = att_run_checks(&opts, print_check, nullptr, &all_passed);
      st != ATT_OK)
    return report(st);
  std::printf("%s\n", all_passed ? "all checks passed" : "some checks FAILED");
  return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambient-space rigid-body attitude stabilization simulator"};
  app.require_subcommand(1);

  SourceOptions sim_src;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Simulate one scenario and write a CSV trajectory");
  add_source_options(simulate, sim_src);
  simulate->add_option("--out", sim_out, "Output CSV path")->required();

  SourceOptions sweep_src;
  std::string sweep_out;
  long long trials = 0;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo region-of-attraction sweep");
  add_source_options(sweep, sweep_src);
  sweep->add_option("--trials", trials, "Number of trials (>= 1)")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--out", sweep_out, "Output CSV path")->required();

  long long check_seed = -1;
  bool flip = false;
  double inject_eps = 0.0;
  auto* check = app.add_subcommand("check", "Run the numerical verification suite");
  check->add_option("--seed", check_seed, "RNG seed")->check(CLI::NonNegativeNumber);
  check->add_flag("--inject-flip-correction", flip,
                  "Test hook: negate the manifold-attraction term")
      ->group("Test hooks");
  auto* eps_opt = check->add_option("--inject-epsilon", inject_eps,
                                    "Test hook: epsilon for the window check")
                      ->group("Test hooks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (simulate->parsed()) return run_simulate(sim_src, sim_out);
  if (sweep->parsed()) return run_sweep(sweep_src, trials, threads, sweep_out);
  return run_check(check_seed, flip, inject_eps, eps_opt->count() > 0);
}
