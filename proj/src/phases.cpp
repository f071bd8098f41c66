#include "geomphase/phases.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geomphase/errors.hpp"

namespace geomphase {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx checked_overlap(const WaveFunction& a, const WaveFunction& b, double floor,
                     const char* what) {
  const cplx z = inner_product(a, b);
  if (std::abs(z) < floor) {
    throw OrthogonalStatesError(std::string(what) + ": overlap " + std::to_string(std::abs(z)) +
                                    " below floor " + std::to_string(floor),
                                std::abs(z));
  }
  return z;
}

}  // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double local_phase_change(const WaveFunction& a, const WaveFunction& b, double overlap_floor) {
  return std::arg(checked_overlap(a, b, overlap_floor, "local_phase_change"));
}

std::vector<double> local_phase_changes(const Trajectory& traj, const PhaseOptions& options) {
  std::vector<double> steps;
  steps.reserve(traj.size() > 0 ? traj.size() - 1 : 0);
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double eta = local_phase_change(traj[k], traj[k + 1], options.overlap_floor);
    if (std::abs(eta) >= options.max_step_phase) {
      throw ResolutionError("local phase change " + std::to_string(eta) + " between samples " +
                            std::to_string(k) + " and " + std::to_string(k + 1) +
                            " exceeds the unwrapping bound; resample finer");
    }
    steps.push_back(eta);
  }
  return steps;
}

double dynamic_phase_from_energy(const Trajectory& traj) {
  if (!traj.hamiltonian()) {
    throw std::invalid_argument("energy form of the dynamic phase needs a Hamiltonian");
  }
  const auto& h = *traj.hamiltonian();
  double integral = 0.0;
  double previous = expect_energy(traj[0], h, traj[0].time());
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double current = expect_energy(traj[k], h, traj[k].time());
    integral += 0.5 * (previous + current) * (traj[k].time() - traj[k - 1].time());
    previous = current;
  }
  return -integral / h.hbar;
}

namespace {

double dynamic_phase_checked(const Trajectory& traj, const std::vector<double>& steps,
                             const PhaseOptions& options, std::optional<double>* energy_form) {
  double sum = 0.0;
  for (double eta : steps) sum += eta;
  if (traj.hamiltonian() && options.check_energy_form) {
    const double from_energy = dynamic_phase_from_energy(traj);
    if (energy_form) *energy_form = from_energy;
    if (std::abs(sum - from_energy) > options.energy_form_tolerance) {
      throw ResolutionError("dynamic phase forms disagree: overlap sum " + std::to_string(sum) +
                            " vs energy integral " + std::to_string(from_energy) +
                            "; resample finer");
    }
  }
  return sum;
}

}  // namespace

double dynamic_phase(const Trajectory& traj, const PhaseOptions& options) {
  return dynamic_phase_checked(traj, local_phase_changes(traj, options), options, nullptr);
}

double total_phase(const Trajectory& traj, double overlap_floor) {
  return std::arg(checked_overlap(traj.front(), traj.back(), overlap_floor, "total_phase"));
}

double cyclicity_defect(const Trajectory& traj) {
  return 1.0 - std::abs(inner_product(traj.front(), traj.back()));
}

double aw_phase(const Trajectory& traj, const PhaseOptions& options) {
  const double phi = total_phase(traj, options.overlap_floor);
  return wrap_phase(phi - dynamic_phase(traj, options));
}

double aa_phase(const Trajectory& traj, const PhaseOptions& options) {
  const double defect = cyclicity_defect(traj);
  if (!(defect < options.cyclic_tolerance)) {
    throw NotCyclicError("trajectory is not cyclic: defect " + std::to_string(defect) +
                             " exceeds tolerance " + std::to_string(options.cyclic_tolerance),
                         defect);
  }
  return aw_phase(traj, options);
}

Trajectory geodesic_closure(const Trajectory& traj, std::size_t n_geodesic, double overlap_floor) {
  if (n_geodesic == 0) throw std::invalid_argument("geodesic closure needs at least one segment");
  const WaveFunction& start = traj.back();
  const cplx z = checked_overlap(traj.front(), start, overlap_floor, "geodesic_closure");
  // Representative of the initial ray in phase with psi(T): <psi(T)|target> > 0.
  const WaveFunction target = traj.front().scaled(std::polar(1.0, std::arg(z)));

  std::vector<WaveFunction> states(traj.states());
  const double t_end = start.time();
  const double step = traj.size() > 1 ? traj.duration() / static_cast<double>(traj.size() - 1) : 1.0;
  const auto from = start.amplitudes();
  const auto to = target.amplitudes();
  for (std::size_t j = 1; j <= n_geodesic; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(n_geodesic);
    const double t = t_end + step * static_cast<double>(j);
    if (j == n_geodesic) {
      states.push_back(target.with_time(t));
      break;
    }
    CVector mix(from.size());
    for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = (1.0 - s) * from[k] + s * to[k];
    states.push_back(WaveFunction(start.grid_ptr(), std::move(mix), t).normalized());
  }
  return Trajectory(std::move(states));
}

double geodesic_closure_phase(const Trajectory& traj, std::size_t n_geodesic,
                              const PhaseOptions& options) {
  return aa_phase(geodesic_closure(traj, n_geodesic, options.overlap_floor), options);
}

PhaseReport phase_report(const Trajectory& traj, const PhaseOptions& options) {
  PhaseReport report;
  report.per_step_phases = local_phase_changes(traj, options);
  report.dynamic_phase =
      dynamic_phase_checked(traj, report.per_step_phases, options, &report.dynamic_phase_energy);
  report.total_phase = total_phase(traj, options.overlap_floor);
  report.aw_phase = wrap_phase(report.total_phase - report.dynamic_phase);
  report.cyclicity_defect = cyclicity_defect(traj);
  if (report.cyclicity_defect < options.cyclic_tolerance) report.aa_phase = report.aw_phase;
  return report;
}

}  // namespace geomphase
