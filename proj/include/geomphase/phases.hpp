#pragma once

#include <optional>
#include <vector>

#include "geomphase/dynamics.hpp"

namespace geomphase {

/// Reduces an angle to the principal interval (-pi, pi].
double wrap_phase(double angle);

struct PhaseOptions {
  /// Minimum |<a|b>| for which a relative phase is considered defined.
  double overlap_floor = 1e-6;
  /// Maximum cyclicity defect 1 - |<psi(0)|psi(T)>| treated as closed.
  double cyclic_tolerance = 1e-4;
  /// Largest |delta eta| between consecutive samples before the sum is
  /// considered unsafe to unwrap.
  double max_step_phase = 0.78539816339744831;  // pi / 4
  /// Agreement required between the overlap and energy forms of the
  /// dynamic phase when the trajectory carries a Hamiltonian.
  double energy_form_tolerance = 1e-4;
  bool check_energy_form = true;
};

/// arg <a|b> in (-pi, pi]: the finite-step local phase change.
double local_phase_change(const WaveFunction& a, const WaveFunction& b,
                          double overlap_floor = 1e-6);

/// delta eta for every consecutive pair of samples.
std::vector<double> local_phase_changes(const Trajectory& traj, const PhaseOptions& options = {});

/// Sum of local phase changes (unwrapped). When the trajectory carries a
/// Hamiltonian the energy form -(1/hbar) \int <H> dt is computed as well and
/// must agree within options.energy_form_tolerance, else ResolutionError.
double dynamic_phase(const Trajectory& traj, const PhaseOptions& options = {});

/// -(1/hbar) \int <H> dt by trapezoidal quadrature over the samples.
double dynamic_phase_from_energy(const Trajectory& traj);

/// arg <psi(0)|psi(T)>.
double total_phase(const Trajectory& traj, double overlap_floor = 1e-6);

/// 1 - |<psi(0)|psi(T)>|
double cyclicity_defect(const Trajectory& traj);

/// Cyclic geometric phase; throws NotCyclicError (carrying the defect)
/// when the trajectory is not closed within options.cyclic_tolerance.
double aa_phase(const Trajectory& traj, const PhaseOptions& options = {});

/// Open-curve geometric phase arg<psi(0)|psi(T)> - gamma_d, reduced to (-pi, pi].
double aw_phase(const Trajectory& traj, const PhaseOptions& options = {});

/// Appends the projective geodesic from psi(T) back to the ray of psi(0),
/// sampled at `n_geodesic` segments of normalized linear interpolation
/// between Pancharatnam-aligned representatives.
Trajectory geodesic_closure(const Trajectory& traj, std::size_t n_geodesic = 64,
                            double overlap_floor = 1e-6);

/// aa_phase of geodesic_closure(traj, n_geodesic).
double geodesic_closure_phase(const Trajectory& traj, std::size_t n_geodesic = 64,
                              const PhaseOptions& options = {});

struct PhaseReport {
  double total_phase = 0.0;
  double dynamic_phase = 0.0;
  std::optional<double> aa_phase;
  double aw_phase = 0.0;
  double cyclicity_defect = 0.0;
  std::vector<double> per_step_phases;
  /// Energy-form dynamic phase, when a Hamiltonian was available.
  std::optional<double> dynamic_phase_energy;
};

PhaseReport phase_report(const Trajectory& traj, const PhaseOptions& options = {});

}  // namespace geomphase
