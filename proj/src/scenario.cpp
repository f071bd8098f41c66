#include "geomphase/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "geomphase/errors.hpp"
#include "geomphase/states.hpp"
#include "json.hpp"

namespace geomphase {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---- parsing ---------------------------------------------------------------

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  if (!object.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&key](const char* a) { return key == a; });
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ConfigError(where + ": missing '" + key + "'");
  return *it;
}

template <typename T>
T read(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T read_or(const json& object, const char* key, const std::string& where, T fallback) {
  return object.contains(key) ? read<T>(object, key, where) : fallback;
}

double read_number(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return value.get<double>();
}

double read_number_or(const json& object, const char* key, const std::string& where, double fallback) {
  return object.contains(key) ? read_number(object, key, where) : fallback;
}

std::size_t read_count(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

cplx read_alpha(const json& value) {
  if (value.is_number()) return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    return {value[0].get<double>(), value[1].get<double>()};
  }
  throw ConfigError("initial_state.alpha: expected a number or [re, im]");
}

void parse_system(const json& j, ScenarioConfig& config) {
  reject_unknown_keys(j, "system", {"potential", "vector_potential"});
  auto& system = config.system;
  const json& potential = require(j, "potential", "system");
  std::string kind;
  if (potential.is_string()) {
    kind = potential.get<std::string>();
  } else {
    reject_unknown_keys(potential, "system.potential", {"kind", "omega", "coefficients"});
    kind = read<std::string>(potential, "kind", "system.potential");
  }
  if (kind == "free") {
    system.potential = PotentialKind::Free;
  } else if (kind == "harmonic") {
    system.potential = PotentialKind::Harmonic;
    system.omega = potential.is_object() ? read_number(potential, "omega", "system.potential") : 1.0;
    if (!(system.omega > 0.0)) throw ConfigError("system.potential.omega must be positive");
  } else if (kind == "polynomial") {
    system.potential = PotentialKind::Polynomial;
    if (!potential.is_object()) throw ConfigError("system.potential: polynomial needs coefficients");
    system.coefficients = read<std::vector<double>>(potential, "coefficients", "system.potential");
  } else {
    throw ConfigError("system.potential: unknown kind '" + kind + "'");
  }
  system.vector_potential = read_number_or(j, "vector_potential", "system", 0.0);
}

void parse_initial_state(const json& j, ScenarioConfig& config) {
  auto& state = config.initial_state;
  const auto kind = read<std::string>(j, "kind", "initial_state");
  if (kind == "gaussian") {
    reject_unknown_keys(j, "initial_state", {"kind", "center", "width", "momentum"});
    state.kind = InitialStateKind::Gaussian;
    state.center = read_number_or(j, "center", "initial_state", 0.0);
    state.width = read_number(j, "width", "initial_state");
    state.momentum = read_number_or(j, "momentum", "initial_state", 0.0);
    if (!(state.width > 0.0)) throw ConfigError("initial_state.width must be positive");
  } else if (kind == "coherent") {
    reject_unknown_keys(j, "initial_state", {"kind", "alpha", "omega"});
    state.kind = InitialStateKind::Coherent;
    state.alpha = read_alpha(require(j, "alpha", "initial_state"));
    state.omega = read_number_or(j, "omega", "initial_state",
                                 config.system.potential == PotentialKind::Harmonic ? config.system.omega : 1.0);
    if (!(state.omega > 0.0)) throw ConfigError("initial_state.omega must be positive");
  } else {
    throw ConfigError("initial_state: unknown kind '" + kind + "'");
  }
}

void parse_evolution(const json& j, ScenarioConfig& config) {
  reject_unknown_keys(j, "evolution", {"T", "periods", "n_steps", "sample_every"});
  auto& evolution = config.evolution;
  if (j.contains("T") == j.contains("periods")) {
    throw ConfigError("evolution: give exactly one of 'T' or 'periods'");
  }
  if (j.contains("periods")) {
    if (config.system.potential != PotentialKind::Harmonic) {
      throw ConfigError("evolution.periods needs a harmonic potential");
    }
    evolution.duration = read_number(j, "periods", "evolution") * kTwoPi / config.system.omega;
  } else {
    evolution.duration = read_number(j, "T", "evolution");
  }
  evolution.n_steps = read_count(j, "n_steps", "evolution");
  evolution.sample_every = j.contains("sample_every") ? read_count(j, "sample_every", "evolution") : 1;
  if (!(evolution.duration >= 0.0) || !std::isfinite(evolution.duration)) {
    throw ConfigError("evolution.T must be finite and non-negative");
  }
  if (evolution.n_steps == 0) throw ConfigError("evolution.n_steps must be >= 1");
  if (evolution.sample_every == 0) throw ConfigError("evolution.sample_every must be >= 1");
}

void parse_tolerances(const json& j, Tolerances& t) {
  reject_unknown_keys(j, "tolerances",
                      {"operator_position", "operator_momentum", "ehrenfest", "eq8", "eq10", "eq11",
                       "displacement", "cyclic_endpoint", "geodesic_closure", "reparametrization",
                       "gauge_sensitivity", "cyclic", "overlap_floor"});
  const std::string where = "tolerances";
  t.operator_position = read_number_or(j, "operator_position", where, t.operator_position);
  t.operator_momentum = read_number_or(j, "operator_momentum", where, t.operator_momentum);
  t.ehrenfest = read_number_or(j, "ehrenfest", where, t.ehrenfest);
  t.eq8 = read_number_or(j, "eq8", where, t.eq8);
  t.eq10 = read_number_or(j, "eq10", where, t.eq10);
  t.eq11 = read_number_or(j, "eq11", where, t.eq11);
  t.displacement = read_number_or(j, "displacement", where, t.displacement);
  t.cyclic_endpoint = read_number_or(j, "cyclic_endpoint", where, t.cyclic_endpoint);
  t.geodesic_closure = read_number_or(j, "geodesic_closure", where, t.geodesic_closure);
  t.reparametrization = read_number_or(j, "reparametrization", where, t.reparametrization);
  t.gauge_sensitivity = read_number_or(j, "gauge_sensitivity", where, t.gauge_sensitivity);
  t.cyclic = read_number_or(j, "cyclic", where, t.cyclic);
  t.overlap_floor = read_number_or(j, "overlap_floor", where, t.overlap_floor);
}

// ---- building --------------------------------------------------------------

HamiltonianPtr build_hamiltonian(const ScenarioConfig& config) {
  const auto& s = config.system;
  const double m = config.units.mass;
  const double hbar = config.units.hbar;
  HamiltonianSpec h;
  switch (s.potential) {
    case PotentialKind::Free: h = HamiltonianSpec::free(m, hbar); break;
    case PotentialKind::Harmonic: h = HamiltonianSpec::harmonic(s.omega, m, hbar); break;
    case PotentialKind::Polynomial: h = HamiltonianSpec::polynomial(s.coefficients, m, hbar); break;
  }
  if (s.vector_potential != 0.0) h = h.with_constant_vector_potential(s.vector_potential);
  return std::make_shared<const HamiltonianSpec>(std::move(h));
}

double packet_width(const ScenarioConfig& config) {
  const auto& s = config.initial_state;
  if (s.kind == InitialStateKind::Gaussian) return s.width;
  return std::sqrt(config.units.hbar / (config.units.mass * s.omega));
}

double packet_center(const ScenarioConfig& config) {
  const auto& s = config.initial_state;
  if (s.kind == InitialStateKind::Gaussian) return s.center;
  return std::sqrt(2.0 * config.units.hbar / (config.units.mass * s.omega)) * s.alpha.real();
}

WaveFunction build_initial_state(const ScenarioConfig& config, GridPtr grid) {
  const auto& s = config.initial_state;
  if (s.kind == InitialStateKind::Gaussian) {
    return gaussian_state(std::move(grid), s.center, s.width, s.momentum).normalized();
  }
  return coherent_state(std::move(grid), s.alpha, s.omega, config.units.mass).normalized();
}

std::optional<double> coherent_reference(const ScenarioConfig& config) {
  const auto& s = config.initial_state;
  if (s.kind != InitialStateKind::Coherent || config.system.potential != PotentialKind::Harmonic ||
      config.system.vector_potential != 0.0 || s.omega != config.system.omega) {
    return std::nullopt;
  }
  const double periods = config.evolution.duration * s.omega / kTwoPi;
  const double whole = std::round(periods);
  if (whole < 1.0 || std::abs(periods - whole) > 1e-9) return std::nullopt;
  return wrap_phase(whole * kTwoPi * std::norm(s.alpha));
}

// ---- per-velocity work -----------------------------------------------------

struct VelocityOutcome {
  TransformationReport report;
  double operator_position = 0.0;
  double operator_momentum = 0.0;
  std::optional<CyclicCaseResult> cyclic_case;
};

VelocityOutcome run_velocity(const Trajectory& traj, const ScenarioConfig& config, double v,
                             const InvarianceOptions& options, bool want_operators, bool want_eq11) {
  VelocityOutcome out;
  const BoostParams boost{v, config.units.mass, config.units.hbar};
  out.report = verify_transformation_law(traj, boost, options);
  if (want_operators) {
    const std::size_t picks[] = {0, traj.size() / 2, traj.size() - 1};
    for (std::size_t k : picks) {
      const auto r = check_operator_transforms(traj[k], traj[k].time(), boost, options.guard);
      out.operator_position = std::max(out.operator_position, r.position);
      out.operator_momentum = std::max(out.operator_momentum, r.momentum);
    }
  }
  if (want_eq11) out.cyclic_case = verify_cyclic_special_case(traj, boost, options);
  return out;
}

std::string format_velocity(double v) {
  std::ostringstream os;
  os << "v=" << v;
  return os.str();
}

CheckResult finish(CheckResult result) {
  if (result.metrics.empty()) {
    result.status = CheckStatus::NotApplicable;
  } else {
    const bool ok = std::all_of(result.metrics.begin(), result.metrics.end(),
                                [](const CheckMetric& m) { return m.passed(); });
    result.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return result;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  reject_unknown_keys(j, "config",
                      {"name", "grid", "units", "system", "initial_state", "evolution", "boost",
                       "checks", "tolerances", "options"});
  ScenarioConfig config;
  config.name = read_or<std::string>(j, "name", "config", config.name);

  const json& grid = require(j, "grid", "config");
  reject_unknown_keys(grid, "grid", {"n_points", "x_min", "dx"});
  config.grid.n_points = read_count(grid, "n_points", "grid");
  config.grid.x_min = read_number(grid, "x_min", "grid");
  config.grid.dx = read_number(grid, "dx", "grid");
  if (config.grid.n_points < 8) {
    throw ConfigError("grid.n_points must be at least 8, got " + std::to_string(config.grid.n_points));
  }
  if (!(config.grid.dx > 0.0)) throw ConfigError("grid.dx must be positive");

  if (j.contains("units")) {
    const json& units = j["units"];
    reject_unknown_keys(units, "units", {"hbar", "m"});
    config.units.hbar = read_number_or(units, "hbar", "units", 1.0);
    config.units.mass = read_number_or(units, "m", "units", 1.0);
  }
  if (!(config.units.hbar > 0.0) || !(config.units.mass > 0.0)) {
    throw ConfigError("units.hbar and units.m must be positive");
  }

  parse_system(require(j, "system", "config"), config);
  parse_initial_state(require(j, "initial_state", "config"), config);
  parse_evolution(require(j, "evolution", "config"), config);

  if (j.contains("boost")) {
    const json& boost = j["boost"];
    reject_unknown_keys(boost, "boost", {"velocities"});
    config.velocities = read<std::vector<double>>(boost, "velocities", "boost");
    for (double v : config.velocities) {
      if (!std::isfinite(v)) throw ConfigError("boost.velocities must be finite");
    }
  }

  if (j.contains("checks")) {
    config.checks = read<std::vector<std::string>>(j, "checks", "config");
    std::set<std::string> seen;
    for (const auto& name : config.checks) {
      if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end()) {
        throw ConfigError("checks: unknown check '" + name + "'");
      }
      if (!seen.insert(name).second) throw ConfigError("checks: '" + name + "' listed twice");
    }
  }

  if (j.contains("tolerances")) parse_tolerances(j["tolerances"], config.tolerances);

  if (j.contains("options")) {
    const json& options = j["options"];
    reject_unknown_keys(options, "options", {"guard_fraction", "n_geodesic", "gauge_lambda", "gauge_profile", "seed"});
    config.guard_fraction = read_number_or(options, "guard_fraction", "options", config.guard_fraction);
    if (options.contains("n_geodesic")) config.n_geodesic = read_count(options, "n_geodesic", "options");
    config.gauge_lambda = read_number_or(options, "gauge_lambda", "options", config.gauge_lambda);
    config.gauge_profile = read_or<std::string>(options, "gauge_profile", "options", config.gauge_profile);
    config.random_seed = read_or<unsigned>(options, "seed", "options", config.random_seed);
    if (config.gauge_profile != "static" && config.gauge_profile != "ramp") {
      throw ConfigError("options.gauge_profile must be 'static' or 'ramp'");
    }
    if (!(config.guard_fraction >= 0.0 && config.guard_fraction < 0.5)) {
      throw ConfigError("options.guard_fraction must lie in [0, 0.5)");
    }
    if (config.n_geodesic == 0) throw ConfigError("options.n_geodesic must be >= 1");
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& c, int indent) {
  json j;
  j["name"] = c.name;
  j["grid"] = {{"n_points", c.grid.n_points}, {"x_min", c.grid.x_min}, {"dx", c.grid.dx}};
  j["units"] = {{"hbar", c.units.hbar}, {"m", c.units.mass}};
  json potential;
  switch (c.system.potential) {
    case PotentialKind::Free: potential = {{"kind", "free"}}; break;
    case PotentialKind::Harmonic: potential = {{"kind", "harmonic"}, {"omega", c.system.omega}}; break;
    case PotentialKind::Polynomial:
      potential = {{"kind", "polynomial"}, {"coefficients", c.system.coefficients}};
      break;
  }
  j["system"] = {{"potential", potential}, {"vector_potential", c.system.vector_potential}};
  const auto& s = c.initial_state;
  if (s.kind == InitialStateKind::Gaussian) {
    j["initial_state"] = {{"kind", "gaussian"}, {"center", s.center}, {"width", s.width}, {"momentum", s.momentum}};
  } else {
    j["initial_state"] = {{"kind", "coherent"},
                          {"alpha", json::array({s.alpha.real(), s.alpha.imag()})},
                          {"omega", s.omega}};
  }
  j["evolution"] = {{"T", c.evolution.duration},
                    {"n_steps", c.evolution.n_steps},
                    {"sample_every", c.evolution.sample_every}};
  j["boost"] = {{"velocities", c.velocities}};
  j["checks"] = c.checks;
  const auto& t = c.tolerances;
  j["tolerances"] = {{"operator_position", t.operator_position},
                     {"operator_momentum", t.operator_momentum},
                     {"ehrenfest", t.ehrenfest},
                     {"eq8", t.eq8},
                     {"eq10", t.eq10},
                     {"eq11", t.eq11},
                     {"displacement", t.displacement},
                     {"cyclic_endpoint", t.cyclic_endpoint},
                     {"geodesic_closure", t.geodesic_closure},
                     {"reparametrization", t.reparametrization},
                     {"gauge_sensitivity", t.gauge_sensitivity},
                     {"cyclic", t.cyclic},
                     {"overlap_floor", t.overlap_floor}};
  j["options"] = {{"guard_fraction", c.guard_fraction},
                  {"n_geodesic", c.n_geodesic},
                  {"gauge_lambda", c.gauge_lambda},
                  {"gauge_profile", c.gauge_profile},
                  {"seed", c.random_seed}};
  return j.dump(indent);
}

void check_feasibility(const ScenarioConfig& config) {
  const double length = config.grid.dx * static_cast<double>(config.grid.n_points);
  const double band = config.guard_fraction * length;
  const double lo = config.grid.x_min + band;
  const double hi = config.grid.x_min + length - band;
  const double center = packet_center(config);
  const double margin = std::min(center - lo, hi - center);
  double max_v = 0.0;
  for (double v : config.velocities) max_v = std::max(max_v, std::abs(v));
  const double needed = max_v * config.evolution.duration + 6.0 * packet_width(config);
  if (!(needed < margin)) {
    std::ostringstream os;
    os << "guard band infeasible: max|v|*T + 6*width = " << needed
       << " does not fit the domain margin " << margin;
    throw InfeasibleScenarioError(os.str());
  }
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

bool RunReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  report.started_at = utc_timestamp();
  report.jobs = std::max(1u, options.jobs);

  check_feasibility(config);

  const auto grid = make_grid(config.grid.n_points, config.grid.x_min, config.grid.dx, config.units.hbar);
  const auto hamiltonian = build_hamiltonian(config);
  const WaveFunction psi0 = build_initial_state(config, grid);

  EvolveOptions evolve_options;
  evolve_options.sample_every = config.evolution.sample_every;
  evolve_options.guard.fraction = config.guard_fraction;
  const Trajectory traj =
      evolve(psi0, hamiltonian, config.evolution.duration, config.evolution.n_steps, evolve_options);

  InvarianceOptions inv;
  inv.phase.overlap_floor = config.tolerances.overlap_floor;
  inv.phase.cyclic_tolerance = config.tolerances.cyclic;
  inv.guard = evolve_options.guard;

  report.lab = phase_report(traj, inv.phase);
  report.coherent_reference_aa = coherent_reference(config);

  auto& series = report.series;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    series.t.push_back(traj[k].time());
    series.expect_q.push_back(expect_position(traj[k]));
    series.expect_p.push_back(expect_momentum(traj[k]));
    series.delta_eta.push_back(k == 0 ? 0.0 : report.lab.per_step_phases[k - 1]);
  }

  const auto wants = [&config](const char* name) {
    return std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
  };

  // Velocity sweep; results land at fixed indices so the report does not
  // depend on scheduling.
  const std::size_t n_v = config.velocities.size();
  std::vector<VelocityOutcome> outcomes(n_v);
  std::vector<std::exception_ptr> failures(n_v);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n_v; i = next++) {
      try {
        outcomes[i] = run_velocity(traj, config, config.velocities[i], inv,
                                   wants("operator_transforms"), wants("eq11"));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(report.jobs, std::max<std::size_t>(n_v, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  for (const auto& o : outcomes) report.boosts.push_back(o.report);

  const auto& tol = config.tolerances;
  const bool lab_cyclic = report.lab.cyclicity_defect < tol.cyclic;
  for (const auto& name : config.checks) {
    CheckResult check;
    check.name = name;
    if (name == "operator_transforms") {
      for (std::size_t i = 0; i < n_v; ++i) {
        const auto label = format_velocity(config.velocities[i]);
        check.metrics.push_back({"r_Q " + label, outcomes[i].operator_position, tol.operator_position});
        check.metrics.push_back({"r_P " + label, outcomes[i].operator_momentum, tol.operator_momentum});
      }
      if (n_v == 0) check.note = "no boost velocities configured";
    } else if (name == "ehrenfest") {
      if (traj.size() < 3) {
        check.note = "fewer than 3 samples";
      } else {
        check.metrics.push_back({"max |r|", ehrenfest_decomposition(traj).max_abs, tol.ehrenfest});
      }
    } else if (name == "eq8") {
      for (std::size_t i = 0; i < n_v; ++i) {
        check.metrics.push_back({"residual " + format_velocity(config.velocities[i]),
                                 outcomes[i].report.residual_eq8, tol.eq8});
      }
      if (n_v == 0) check.note = "no boost velocities configured";
    } else if (name == "eq10") {
      for (std::size_t i = 0; i < n_v; ++i) {
        const auto& r = outcomes[i].report;
        const auto label = format_velocity(config.velocities[i]);
        check.metrics.push_back({"residual " + label, r.residual_eq10.value_or(INFINITY), tol.eq10});
        if (lab_cyclic) {
          check.metrics.push_back({"|endpoint factor - 1| " + label,
                                   std::abs(std::polar(1.0, -r.endpoint_q_term) - 1.0), tol.cyclic_endpoint});
        }
      }
      if (n_v == 0) check.note = "no boost velocities configured";
    } else if (name == "eq11") {
      for (std::size_t i = 0; i < n_v; ++i) {
        const auto& c = outcomes[i].cyclic_case;
        if (!c) continue;
        const auto label = format_velocity(config.velocities[i]);
        check.metrics.push_back({"residual " + label, c->residual, tol.eq11});
        check.metrics.push_back({"displacement-only " + label, c->displacement_mismatch, tol.displacement});
      }
      if (check.metrics.empty()) {
        check.note = "needs a lab-cyclic trajectory with vanishing \\int A dt and a boost velocity";
      }
    } else if (name == "geodesic_closure") {
      if (traj.size() < 3) {
        check.note = "fewer than 3 samples";
      } else {
        // Cyclic runs are cut at the midpoint to obtain an open curve.
        const Trajectory open = lab_cyclic ? slice(traj, 0, (traj.size() - 1) / 2) : traj;
        const double aw = aw_phase(open, inv.phase);
        const double closed = geodesic_closure_phase(open, config.n_geodesic, inv.phase);
        check.metrics.push_back({"|aw - closure|", std::abs(wrap_phase(aw - closed)), tol.geodesic_closure});
        if (lab_cyclic) check.note = "open curve: first half of the trajectory";
      }
    } else if (name == "reparametrization") {
      if (traj.size() < 2 || config.evolution.duration == 0.0) {
        check.note = "single-sample trajectory";
      } else {
        const double t_end = config.evolution.duration;
        const cplx reference = std::polar(1.0, report.lab.aw_phase);
        const Trajectory warped = retime(traj, [t_end](double t) { return t + t * t * t / (t_end * t_end); });
        check.metrics.push_back({"time warp", std::abs(std::polar(1.0, aw_phase(warped, inv.phase)) - reference),
                                 tol.reparametrization});
        std::mt19937 rng(config.random_seed);
        std::uniform_real_distribution<double> jump(-std::numbers::pi / 8.0, std::numbers::pi / 8.0);
        std::vector<double> chi(traj.size());
        double accumulated = 0.0;
        for (auto& c : chi) c = (accumulated += jump(rng));
        const Trajectory lifted = phase_lift(traj, chi);
        check.metrics.push_back({"phase lift", std::abs(std::polar(1.0, aw_phase(lifted, inv.phase)) - reference),
                                 tol.reparametrization});
      }
    } else if (name == "gauge_sensitivity") {
      const double lambda = config.gauge_lambda;
      const double t_end = config.evolution.duration;
      const Trajectory gauged =
          config.gauge_profile == "static"
              ? linear_gauge_transform(traj, lambda)
              : gauge_transform(traj, [lambda, t_end](double x, double t) {
                  return t_end > 0.0 ? lambda * x * t / t_end : 0.0;
                });
      const double change = std::abs(std::polar(1.0, aw_phase(gauged, inv.phase)) -
                                     std::polar(1.0, report.lab.aw_phase));
      check.metrics.push_back({"|change of aw factor|", change, tol.gauge_sensitivity, true});
      check.note = "f = " + std::to_string(lambda) + (config.gauge_profile == "static" ? " x" : " x t / T");
    }
    report.checks.push_back(finish(std::move(check)));
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace geomphase
