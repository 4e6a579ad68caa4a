#include "attitude/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "attitude/error.hpp"

namespace attitude {
namespace {

constexpr std::string_view kTrajectoryHeader =
    "t,r00,r01,r02,r10,r11,r12,r20,r21,r22,wx,wy,wz,u_norm,err_r,err_omega,"
    "v_tilde,w,w_dot_bound";
constexpr std::string_view kSweepHeader =
    "seed,initial_distance,classification,final_err_r,final_err_omega";

[[noreturn]] void parse_error(const std::string& msg) {
  throw Error(ErrorCode::kParse, msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_plain_number(std::string_view token) {
  const std::string s(token);
  if (s.empty()) parse_error("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) parse_error("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_reals(std::string_view list) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      out.push_back(parse_real(token));
      token.clear();
    }
  };
  for (char c : list) {
    if (c == ',' || c == ' ' || c == '\t') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

std::vector<double> parse_reals(std::string_view list, std::size_t count,
                                const char* what) {
  std::vector<double> v = parse_reals(list);
  if (v.size() != count) {
    std::ostringstream os;
    os << what << " expects " << count << " numbers, got " << v.size();
    parse_error(os.str());
  }
  return v;
}

Mat3 parse_matrix(std::string_view value) {
  value = trim(value);
  double scale = 1.0;
  if (starts_with(value, "scale:")) {
    value.remove_prefix(6);
    const auto comma = value.find(',');
    if (comma == std::string_view::npos) parse_error("scale: expects 'scale:s,<matrix>'");
    scale = parse_real(trim(value.substr(0, comma)));
    value = trim(value.substr(comma + 1));
  }

  Mat3 m;
  if (value == "identity") {
    m = Mat3::identity();
  } else if (starts_with(value, "diag:")) {
    const auto d = parse_reals(value.substr(5), 3, "diag:");
    m = Mat3::diag(d[0], d[1], d[2]);
  } else if (starts_with(value, "expmap:")) {
    const auto v = parse_reals(value.substr(7), 4, "expmap:");
    const Vec3 axis{v[0], v[1], v[2]};
    const double n = norm(axis);
    if (!(n > 0.0) || !std::isfinite(n)) parse_error("expmap: axis must be nonzero");
    m = rodrigues_exp((1.0 / n) * axis, v[3]);
  } else {
    const auto v = parse_reals(value, 9, "matrix");
    for (std::size_t i = 0; i < 9; ++i) m.a[i] = v[i];
  }
  return scale * m;
}

Vec3 parse_vec3(std::string_view value) {
  const auto v = parse_reals(value, 3, "vector");
  return {v[0], v[1], v[2]};
}

std::uint64_t parse_unsigned(std::string_view value) {
  const std::string s(trim(value));
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    parse_error("expected a non-negative integer, got '" + s + "'");
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) parse_error("integer out of range: '" + s + "'");
  return v;
}

void resolve_auto_epsilon(ScenarioConfig& cfg, bool epsilon_auto) {
  Gains& g = cfg.sim.gains;
  if (epsilon_auto && g.k_p > 0.0 && g.k_d > 0.0)
    g.epsilon = default_epsilon(g.k_p, g.k_d);
}

void validate_sampler(const SamplerSpec& s) {
  if (!(s.delta_max > 0.0) || !(s.delta_max < std::sqrt(1.0 / 3.0)))
    throw Error(ErrorCode::kInvalidConfig,
                "sampler_delta_max must lie in (0, sqrt(1/3))");
  if (!(s.omega_max >= 0.0) || !std::isfinite(s.omega_max))
    throw Error(ErrorCode::kInvalidConfig, "sampler_omega_max must be >= 0");
  if (!std::isfinite(s.angle))
    throw Error(ErrorCode::kInvalidConfig, "sampler_angle must be finite");
}

// Whether epsilon follows 0.99 * max_epsilon of the gains or was set explicitly.
struct EpsilonMode {
  bool is_auto = true;
};

void apply_value(ScenarioConfig& cfg, EpsilonMode& eps, std::string_view key,
                 std::string_view value) {
  SimConfig& sim = cfg.sim;
  value = trim(value);
  if (key == "r0") {
    sim.r0 = parse_matrix(value);
  } else if (key == "r_init") {
    sim.r_init = parse_matrix(value);
  } else if (key == "omega_init") {
    sim.omega_init = parse_vec3(value);
  } else if (key == "k_e") {
    sim.gains.k_e = parse_real(value);
  } else if (key == "k_p") {
    sim.gains.k_p = parse_real(value);
  } else if (key == "k_d") {
    sim.gains.k_d = parse_real(value);
  } else if (key == "epsilon") {
    if (value == "auto") {
      eps.is_auto = true;
    } else {
      eps.is_auto = false;
      sim.gains.epsilon = parse_real(value);
    }
  } else if (key == "dt") {
    sim.dt = parse_real(value);
  } else if (key == "t_end") {
    sim.t_end = parse_real(value);
  } else if (key == "integrator") {
    if (value == "euler") sim.method = Method::kEuler;
    else if (value == "rk4") sim.method = Method::kRk4;
    else parse_error("integrator must be 'euler' or 'rk4'");
  } else if (key == "control_hold") {
    if (value == "stage") sim.hold = ControlHold::kPerStage;
    else if (value == "zoh") sim.hold = ControlHold::kZeroOrder;
    else parse_error("control_hold must be 'stage' or 'zoh'");
  } else if (key == "noise_rel") {
    sim.noise_rel = parse_real(value);
  } else if (key == "seed") {
    sim.seed = parse_unsigned(value);
  } else if (key == "record_every") {
    sim.record_every = static_cast<std::size_t>(parse_unsigned(value));
  } else if (key == "sampler") {
    if (value == "fixed") cfg.sampler.kind = SamplerKind::kFixed;
    else if (value == "admissible") cfg.sampler.kind = SamplerKind::kAdmissible;
    else if (value == "perturb") cfg.sampler.kind = SamplerKind::kPerturb;
    else parse_error("sampler must be 'fixed', 'admissible' or 'perturb'");
  } else if (key == "sampler_omega_max") {
    cfg.sampler.omega_max = parse_real(value);
  } else if (key == "sampler_delta_max") {
    cfg.sampler.delta_max = parse_real(value);
  } else if (key == "sampler_angle") {
    cfg.sampler.angle = parse_real(value);
  } else {
    parse_error("unknown key '" + std::string(key) + "'");
  }
}

// Auto epsilon is recognisable as exactly 0.99 * max_epsilon of the gains.
EpsilonMode infer_epsilon_mode(const ScenarioConfig& cfg) {
  const Gains& g = cfg.sim.gains;
  EpsilonMode mode;
  mode.is_auto = g.k_p > 0.0 && g.k_d > 0.0 &&
                 g.epsilon == default_epsilon(g.k_p, g.k_d);
  return mode;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"ideal", "offmanifold", "e2"};
}

ScenarioConfig builtin_scenario(std::string_view name) {
  ScenarioConfig cfg;
  SimConfig& sim = cfg.sim;
  sim.r0 = Mat3::diag(-1.0, -1.0, 1.0);
  sim.gains = Gains{1.0, 4.0, 2.0, default_epsilon(4.0, 2.0)};
  sim.dt = 1e-3;
  sim.t_end = 20.0;
  sim.method = Method::kRk4;
  sim.record_every = 10;
  sim.seed = 0;

  const Mat3 tilted = rodrigues_exp({0.0, 1.0, 0.0}, 2.0 * M_PI / 3.0);
  if (name == "ideal") {
    sim.r_init = tilted;
    sim.omega_init = {0.0, 1.0, 1.0};
  } else if (name == "offmanifold") {
    sim.r_init = 1.1 * tilted;
    sim.omega_init = {0.0, 1.0, 1.0};
    sim.noise_rel = 1e-3;
  } else if (name == "e2") {
    // R0^T I = diag(-1,-1,1) is the half turn about e3, held exactly so the
    // forward invariance of the set is not spoiled by rounding.
    sim.r_init = Mat3::identity();
    sim.omega_init = {0.0, 0.0, 0.0};
    sim.t_end = 40.0;
    cfg.sampler.kind = SamplerKind::kFixed;
  } else {
    throw Error(ErrorCode::kInvalidConfig,
                "unknown scenario '" + std::string(name) +
                    "' (expected ideal, offmanifold or e2)");
  }
  return cfg;
}

double parse_real(std::string_view token) {
  token = trim(token);
  const auto pi_pos = token.find("pi");
  if (pi_pos == std::string_view::npos) return parse_plain_number(token);

  const std::string_view coef = token.substr(0, pi_pos);
  std::string_view rest = token.substr(pi_pos + 2);
  double value = M_PI;
  if (coef == "-") {
    value = -M_PI;
  } else if (!coef.empty() && coef != "+") {
    std::string_view c = coef;
    if (c.back() == '*') c.remove_suffix(1);
    value *= parse_plain_number(c);
  }
  if (!rest.empty()) {
    if (rest.front() != '/') parse_error("bad pi expression: '" + std::string(token) + "'");
    rest.remove_prefix(1);
    value /= parse_plain_number(rest);
  }
  return value;
}

void apply_config_value(ScenarioConfig& cfg, std::string_view key,
                        std::string_view value) {
  EpsilonMode mode = infer_epsilon_mode(cfg);
  apply_value(cfg, mode, trim(key), value);
  resolve_auto_epsilon(cfg, mode.is_auto);
}

ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base) {
  ScenarioConfig cfg = base;
  EpsilonMode mode = infer_epsilon_mode(cfg);
  std::set<std::string, std::less<>> seen;

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    std::ostringstream where;
    where << "line " << line_no;
    if (eq == std::string_view::npos)
      parse_error(where.str() + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    where << ": key '" << key << "'";
    if (!seen.insert(std::string(key)).second)
      parse_error(where.str() + ": duplicate key");
    try {
      apply_value(cfg, mode, key, value);
    } catch (const Error& e) {
      throw Error(e.code(), where.str() + ": " + e.what());
    }
  }

  resolve_auto_epsilon(cfg, mode.is_auto);
  validate(cfg);
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  validate(cfg.sim);
  validate_sampler(cfg.sampler);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ScenarioConfig& cfg) {
  const SimConfig& sim = cfg.sim;
  auto mat = [](const Mat3& m) {
    std::string s;
    for (std::size_t i = 0; i < 9; ++i) s += (i ? "," : "") + fmt(m.a[i]);
    return s;
  };
  std::ostringstream os;
  os << "r0 = " << mat(sim.r0) << '\n'
     << "r_init = " << mat(sim.r_init) << '\n'
     << "omega_init = " << fmt(sim.omega_init.x) << ',' << fmt(sim.omega_init.y)
     << ',' << fmt(sim.omega_init.z) << '\n'
     << "k_e = " << fmt(sim.gains.k_e) << '\n'
     << "k_p = " << fmt(sim.gains.k_p) << '\n'
     << "k_d = " << fmt(sim.gains.k_d) << '\n'
     << "epsilon = "
     << (infer_epsilon_mode(cfg).is_auto ? std::string("auto") : fmt(sim.gains.epsilon))
     << '\n'
     << "dt = " << fmt(sim.dt) << '\n'
     << "t_end = " << fmt(sim.t_end) << '\n'
     << "integrator = " << to_string(sim.method) << '\n'
     << "control_hold = " << to_string(sim.hold) << '\n'
     << "noise_rel = " << fmt(sim.noise_rel) << '\n'
     << "seed = " << sim.seed << '\n'
     << "record_every = " << sim.record_every << '\n'
     << "sampler = " << to_string(cfg.sampler.kind) << '\n'
     << "sampler_omega_max = " << fmt(cfg.sampler.omega_max) << '\n'
     << "sampler_delta_max = " << fmt(cfg.sampler.delta_max) << '\n'
     << "sampler_angle = " << fmt(cfg.sampler.angle) << '\n';
  return os.str();
}

// ---- CSV ----------------------------------------------------------------------

std::string_view trajectory_csv_header() { return kTrajectoryHeader; }
std::string_view sweep_csv_header() { return kSweepHeader; }

std::vector<TrajectoryRow> trajectory_rows(const TrajectoryRecord& rec) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(rec.samples.size());
  for (const Sample& s : rec.samples) {
    TrajectoryRow row{};
    row[0] = s.t;
    for (std::size_t i = 0; i < 9; ++i) row[1 + i] = s.state.R.a[i];
    for (std::size_t i = 0; i < 3; ++i) row[10 + i] = s.state.omega[i];
    row[13] = s.u_norm;
    row[14] = s.err_r;
    row[15] = s.err_omega;
    row[16] = s.v_tilde;
    row[17] = s.w;
    row[18] = s.w_dot_bound;
    rows.push_back(row);
  }
  return rows;
}

std::string format_trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const TrajectoryRow& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<TrajectoryRow> parse_trajectory_csv(std::string_view text) {
  std::vector<TrajectoryRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!header_seen) {
      if (line != kTrajectoryHeader) parse_error("trajectory CSV: bad header");
      header_seen = true;
      continue;
    }
    TrajectoryRow row{};
    std::size_t col = 0;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      if (col >= kTrajectoryColumns) break;
      row[col++] = parse_plain_number(rest.substr(0, comma));
      if (comma == std::string_view::npos) {
        rest = {};
        break;
      }
      rest = rest.substr(comma + 1);
    }
    if (col != kTrajectoryColumns || !rest.empty()) {
      std::ostringstream os;
      os << "trajectory CSV: line " << line_no << " does not have "
         << kTrajectoryColumns << " columns";
      parse_error(os.str());
    }
    rows.push_back(row);
  }
  if (!header_seen) parse_error("trajectory CSV: missing header");
  return rows;
}

std::string format_sweep_csv(const SweepResult& result) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const TrialSummary& t : result.trials) {
    out += std::to_string(t.seed);
    out += ',' + fmt(t.initial_distance);
    out += ',';
    out += to_string(t.outcome);
    out += ',' + fmt(t.final_err_r) + ',' + fmt(t.final_err_omega) + '\n';
  }
  return out;
}

std::string sweep_summary(const SweepResult& result) {
  std::ostringstream os;
  os << "trials=" << result.trials.size()
     << " E1=" << result.count(Outcome::kE1)
     << " E2=" << result.count(Outcome::kE2)
     << " none=" << result.count(Outcome::kNone)
     << " diverged=" << result.count(Outcome::kDiverged);
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

}  // namespace attitude
