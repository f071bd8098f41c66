// Scenario runner.
//
//   geomphase run <config> [--out DIR] [--format json,text,csv] [--jobs N] [--verbose]
//
// Exit status: 0 all applicable checks passed, 1 a check failed,
// 2 config or I/O problem, 3 physics-domain error (guard band, resolution).

#include <iostream>

#include "CLI11.hpp"
#include "geomphase/errors.hpp"
#include "geomphase/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kDomainError = 3 };

int run_command(const std::string& config_path, const std::string& out_dir,
                const std::string& format_list, unsigned jobs, bool verbose) {
  using namespace geomphase;
  std::vector<ReportFormat> formats;
  ScenarioConfig config;
  try {
    formats = parse_formats(format_list);
    config = load_scenario(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  RunReport report;
  try {
    report = run_scenario(config, {jobs, verbose});
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "physics-domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const auto written = emit_report(report, out_dir, formats);
    if (verbose) {
      for (const auto& p : written) std::cerr << "wrote " << p.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kConfigError;
  }

  if (verbose) {
    std::cout << report_to_text(report);
  } else {
    for (const auto& c : report.checks) {
      std::cout << to_string(c.status) << "  " << c.name << "\n";
    }
  }
  if (!report.all_passed()) {
    std::cerr << "failing residuals:\n";
    for (const auto& c : report.checks) {
      for (const auto& m : c.metrics) {
        if (m.passed()) continue;
        std::cerr << "  " << c.name << ": " << m.label << " = " << m.value
                  << (m.must_exceed ? " (needs > " : " (needs < ") << m.tolerance << ")\n";
      }
    }
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phase and Galilean boost scenario runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "geomphase-report";
  std::string formats = "json,text,csv";
  unsigned jobs = 1;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "Run a scenario file and write reports");
  run->add_option("config", config_path, "Scenario config (JSON with comments)")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--format", formats, "Comma-separated subset of json,text,csv")->capture_default_str();
  run->add_option("--jobs", jobs, "Velocities processed in parallel")->check(CLI::PositiveNumber);
  run->add_flag("--verbose,-v", verbose, "Print the full text report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return run_command(config_path, out_dir, formats, jobs, verbose);
}
