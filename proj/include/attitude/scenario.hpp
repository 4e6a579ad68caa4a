#pragma once

// Scenario configuration files and built-in scenarios. The CSV formats written
// by the command-line tool live here too.
//
// Config files are plain `key = value` lines; `#` starts a comment. Matrices
// accept `diag:a,b,c`, `expmap:ax,ay,az,theta`, `identity`, nine reals in
// row-major order, or any of these prefixed with `scale:s,`. Reals accept the
// forms `1.5`, `pi`, `2pi/3`, `-pi/2`.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "attitude/integrator.hpp"

namespace attitude {

struct ScenarioConfig {
  SimConfig sim;
  SamplerSpec sampler;
};

/// Names accepted by builtin_scenario().
std::vector<std::string> builtin_scenario_names();

/// "ideal", "offmanifold", or "e2". Throws Error(kInvalidConfig) otherwise.
ScenarioConfig builtin_scenario(std::string_view name);

/// Applies the lines of `text` on top of `base`. Unknown or repeated keys and
/// malformed values throw Error(kParse) naming the line and key; a result
/// that fails validation throws the validation error.
ScenarioConfig parse_config(std::string_view text,
                            const ScenarioConfig& base = builtin_scenario("ideal"));

/// Validates the simulation and sampler settings; throws the matching Error.
void validate(const ScenarioConfig& cfg);

/// Reads a file and parses it on top of the "ideal" scenario.
ScenarioConfig load_config(const std::string& path);

/// Sets one key as if it appeared on a config line.
void apply_config_value(ScenarioConfig& cfg, std::string_view key,
                        std::string_view value);

/// Full key = value dump with 17 significant digits; parse_config of the
/// result reproduces the configuration.
std::string format_config(const ScenarioConfig& cfg);

/// Parses one real in the forms listed above. Throws Error(kParse).
double parse_real(std::string_view token);

// ---- trajectory CSV -----------------------------------------------------------

inline constexpr std::size_t kTrajectoryColumns = 19;
using TrajectoryRow = std::array<double, kTrajectoryColumns>;

/// t,r00..r22,wx,wy,wz,u_norm,err_r,err_omega,v_tilde,w,w_dot_bound
std::string_view trajectory_csv_header();

std::vector<TrajectoryRow> trajectory_rows(const TrajectoryRecord& rec);

/// Header plus one row per sample, "%.17g" values, '\n' line endings.
std::string format_trajectory_csv(const std::vector<TrajectoryRow>& rows);
inline std::string format_trajectory_csv(const TrajectoryRecord& rec) {
  return format_trajectory_csv(trajectory_rows(rec));
}

/// Inverse of format_trajectory_csv. Throws Error(kParse) on malformed input.
std::vector<TrajectoryRow> parse_trajectory_csv(std::string_view text);

// ---- sweep CSV ----------------------------------------------------------------

/// seed,initial_distance,classification,final_err_r,final_err_omega
std::string_view sweep_csv_header();

std::string format_sweep_csv(const SweepResult& result);

/// One-line count summary, e.g. "trials=100 E1=100 E2=0 none=0 diverged=0".
std::string sweep_summary(const SweepResult& result);

/// Writes `contents` to `path`; throws Error(kIo) on failure.
void write_file(const std::string& path, std::string_view contents);

}  // namespace attitude
