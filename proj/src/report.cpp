#include <fstream>
#include <iomanip>
#include <sstream>

#include "geomphase/errors.hpp"
#include "geomphase/scenario.hpp"
#include "json.hpp"

namespace geomphase {

using nlohmann::json;

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

json transformation_json(const TransformationReport& r) {
  return {{"velocity", r.velocity},
          {"gamma_aw_lab", r.gamma_aw_lab},
          {"gamma_aw_boosted", r.gamma_aw_boosted},
          {"predicted_factor", complex_json(r.predicted_factor)},
          {"residual_eq8", r.residual_eq8},
          {"overlap_ratio_factor", complex_json(r.overlap_ratio_factor)},
          {"momentum_integral", r.momentum_integral},
          {"vector_potential_integral", optional_json(r.vector_potential_integral)},
          {"endpoint_q_term", r.endpoint_q_term},
          {"residual_eq10", optional_json(r.residual_eq10)},
          {"cyclic_case_applicable", r.cyclic_case_applicable},
          {"residual_eq11", optional_json(r.residual_eq11)},
          {"non_invariance_gap", r.non_invariance_gap},
          {"lab_cyclicity_defect", r.lab_cyclicity_defect},
          {"boosted_cyclicity_defect", r.boosted_cyclicity_defect},
          {"warnings", r.warnings}};
}

json check_json(const CheckResult& c) {
  json metrics = json::array();
  for (const auto& m : c.metrics) {
    metrics.push_back({{"label", m.label},
                       {"value", m.value},
                       {"tolerance", m.tolerance},
                       {"comparison", m.must_exceed ? ">" : "<"},
                       {"passed", m.passed()}});
  }
  json out = {{"name", c.name}, {"status", to_string(c.status)}, {"metrics", metrics}};
  if (!c.note.empty()) out["note"] = c.note;
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::vector<ReportFormat> parse_formats(const std::string& list) {
  std::vector<ReportFormat> formats;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "json") formats.push_back(ReportFormat::Json);
    else if (item == "text") formats.push_back(ReportFormat::Text);
    else if (item == "csv") formats.push_back(ReportFormat::Csv);
    else if (!item.empty()) throw ConfigError("unknown report format '" + item + "'");
  }
  if (formats.empty()) throw ConfigError("no report format selected");
  return formats;
}

std::string report_to_json(const RunReport& report, int indent) {
  json j;
  j["config"] = json::parse(scenario_to_json(report.config));
  const auto& lab = report.lab;
  j["lab_phases"] = {{"total_phase", lab.total_phase},
                     {"dynamic_phase", lab.dynamic_phase},
                     {"dynamic_phase_energy_form", optional_json(lab.dynamic_phase_energy)},
                     {"aa_phase", optional_json(lab.aa_phase)},
                     {"aw_phase", lab.aw_phase},
                     {"cyclicity_defect", lab.cyclicity_defect},
                     {"n_samples", report.series.t.size()},
                     {"branch_convention", "principal arg in (-pi, pi]"}};
  if (report.coherent_reference_aa) {
    j["lab_phases"]["coherent_state_reference_aa"] = *report.coherent_reference_aa;
  }
  j["boosts"] = json::array();
  for (const auto& b : report.boosts) j["boosts"].push_back(transformation_json(b));
  j["checks"] = json::array();
  for (const auto& c : report.checks) j["checks"].push_back(check_json(c));
  j["all_passed"] = report.all_passed();
  j["runtime"] = {{"started_at", report.started_at},
                  {"elapsed_seconds", report.elapsed_seconds},
                  {"jobs", report.jobs}};
  return j.dump(indent);
}

std::string report_to_text(const RunReport& report) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "scenario: " << report.config.name << "\n";
  os << "samples: " << report.series.t.size() << "  T = " << report.config.evolution.duration << "\n\n";
  const auto& lab = report.lab;
  os << "lab frame\n";
  os << "  total phase       " << lab.total_phase << "\n";
  os << "  dynamic phase     " << lab.dynamic_phase << "\n";
  os << "  AW phase          " << lab.aw_phase << "\n";
  if (lab.aa_phase) os << "  AA phase          " << *lab.aa_phase << "\n";
  else os << "  AA phase          (not cyclic)\n";
  os << "  cyclicity defect  " << lab.cyclicity_defect << "\n";
  if (report.coherent_reference_aa) {
    os << "  reference AA      " << *report.coherent_reference_aa << "  (2 pi |alpha|^2 per period)\n";
  }
  if (!report.boosts.empty()) {
    os << "\nboosts\n";
    for (const auto& b : report.boosts) {
      os << "  v = " << b.velocity << ": AW boosted " << b.gamma_aw_boosted << ", gap "
         << b.non_invariance_gap << ", eq8 residual " << b.residual_eq8 << ", boosted defect "
         << b.boosted_cyclicity_defect << "\n";
      for (const auto& w : b.warnings) os << "    warning: " << w << "\n";
    }
  }
  os << "\nchecks\n";
  for (const auto& c : report.checks) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
    for (const auto& m : c.metrics) {
      os << "      " << m.label << " = " << m.value << (m.must_exceed ? " > " : " < ") << m.tolerance
         << (m.passed() ? "" : "  FAILED") << "\n";
    }
  }
  os << "\nresult: " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string timeseries_to_csv(const TimeSeries& series) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,expect_q,expect_p,delta_eta,accumulated_eta\n";
  double accumulated = 0.0;
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    accumulated += series.delta_eta[k];
    os << series.t[k] << ',' << series.expect_q[k] << ',' << series.expect_p[k] << ','
       << series.delta_eta[k] << ',' << accumulated << '\n';
  }
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<ReportFormat>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (auto format : formats) {
    std::filesystem::path path;
    switch (format) {
      case ReportFormat::Json:
        path = out_dir / "report.json";
        write_file(path, report_to_json(report) + "\n");
        break;
      case ReportFormat::Text:
        path = out_dir / "report.txt";
        write_file(path, report_to_text(report));
        break;
      case ReportFormat::Csv:
        path = out_dir / "timeseries.csv";
        write_file(path, timeseries_to_csv(report.series));
        break;
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace geomphase
