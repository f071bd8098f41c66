#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geomphase/errors.hpp"
#include "geomphase/invariance.hpp"

namespace geomphase {

// Declarative scenario description. Parsed from JSON (comments allowed);
// see the README for the annotated format.

struct GridConfig {
  std::size_t n_points = 0;
  double x_min = 0.0;
  double dx = 0.0;
};

struct UnitsConfig {
  double hbar = 1.0;
  double mass = 1.0;
};

enum class PotentialKind { Free, Harmonic, Polynomial };

struct SystemConfig {
  PotentialKind potential = PotentialKind::Free;
  double omega = 1.0;                ///< harmonic only
  std::vector<double> coefficients;  ///< polynomial only, ascending powers
  double vector_potential = 0.0;     ///< constant A_x
};

enum class InitialStateKind { Gaussian, Coherent };

struct InitialStateConfig {
  InitialStateKind kind = InitialStateKind::Gaussian;
  double center = 0.0;
  double width = 1.0;
  double momentum = 0.0;
  cplx alpha{0.0, 0.0};
  double omega = 1.0;
};

struct EvolutionConfig {
  double duration = 0.0;
  std::size_t n_steps = 1;
  std::size_t sample_every = 1;
};

struct Tolerances {
  double operator_position = 1e-10;
  double operator_momentum = 1e-8;
  double ehrenfest = 1e-4;
  double eq8 = 1e-6;
  double eq10 = 1e-5;
  double eq11 = 1e-5;
  double displacement = 1e-10;
  double cyclic_endpoint = 1e-6;
  double geodesic_closure = 1e-6;
  double reparametrization = 1e-9;
  double gauge_sensitivity = 0.01;  ///< minimum change of the phase factor
  double cyclic = 1e-4;
  double overlap_floor = 1e-6;
};

inline const std::vector<std::string> kCheckNames = {
    "operator_transforms", "ehrenfest",   "eq8",          "eq10",
    "eq11",                "geodesic_closure", "reparametrization", "gauge_sensitivity"};

struct ScenarioConfig {
  std::string name = "scenario";
  GridConfig grid;
  UnitsConfig units;
  SystemConfig system;
  InitialStateConfig initial_state;
  EvolutionConfig evolution;
  std::vector<double> velocities;
  std::vector<std::string> checks;
  Tolerances tolerances;
  double guard_fraction = 0.05;
  std::size_t n_geodesic = 64;
  double gauge_lambda = 0.3;
  /// Gauge used by gauge_sensitivity: f = lambda x ("static") or
  /// f = lambda x t / T ("ramp").
  std::string gauge_profile = "static";
  unsigned random_seed = 12345;
};

/// Parses and validates. Throws ConfigError on malformed input or invalid
/// values (bad check names, n_points < 8, ...).
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Effective configuration, defaults included, as a JSON string.
std::string scenario_to_json(const ScenarioConfig& config, int indent = 2);

class InfeasibleScenarioError : public Error {
 public:
  using Error::Error;
};

/// Guard-band feasibility: max|v| T + 6 width must fit inside the margin
/// between the initial centre and the guard band. Throws
/// InfeasibleScenarioError otherwise.
void check_feasibility(const ScenarioConfig& config);

enum class CheckStatus { Pass, Fail, NotApplicable };
const char* to_string(CheckStatus status);

struct CheckMetric {
  std::string label;
  double value = 0.0;
  double tolerance = 0.0;
  bool must_exceed = false;  ///< pass when value > tolerance instead of <
  bool passed() const { return must_exceed ? value > tolerance : value < tolerance; }
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  std::vector<CheckMetric> metrics;
  std::string note;
};

struct TimeSeries {
  std::vector<double> t;
  std::vector<double> expect_q;
  std::vector<double> expect_p;
  std::vector<double> delta_eta;  ///< row 0 holds 0
};

struct RunReport {
  ScenarioConfig config;
  PhaseReport lab;
  std::optional<double> coherent_reference_aa;  ///< 2 pi |alpha|^2 mod 2 pi, when applicable
  std::vector<TransformationReport> boosts;
  std::vector<CheckResult> checks;
  TimeSeries series;
  double elapsed_seconds = 0.0;
  std::string started_at;
  unsigned jobs = 1;

  bool all_passed() const;
};

struct RunOptions {
  unsigned jobs = 1;
  bool verbose = false;
};

/// Builds the system, evolves, measures phases, runs the boosts and every
/// requested check.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

enum class ReportFormat { Json, Text, Csv };
std::vector<ReportFormat> parse_formats(const std::string& list);

/// Writes report.json / report.txt / timeseries.csv into `out_dir` and
/// returns the written paths. I/O failures throw std::runtime_error naming
/// the path.
std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<ReportFormat>& formats);

/// Structured report body; deterministic for a given config except for the
/// "runtime" block.
std::string report_to_json(const RunReport& report, int indent = 2);
std::string report_to_text(const RunReport& report);
std::string timeseries_to_csv(const TimeSeries& series);

}  // namespace geomphase
