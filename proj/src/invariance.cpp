#include "geomphase/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geomphase/errors.hpp"

namespace geomphase {
namespace {

cplx unit(cplx z) { return z / std::abs(z); }

cplx checked_overlap(const WaveFunction& a, const WaveFunction& b, double floor) {
  const cplx z = inner_product(a, b);
  if (std::abs(z) < floor) {
    throw OrthogonalStatesError("boost factor: endpoint overlap " + std::to_string(std::abs(z)) +
                                    " below floor",
                                std::abs(z));
  }
  return z;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double sum = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) sum += 0.5 * (f[k] + f[k - 1]) * (t[k] - t[k - 1]);
  return sum;
}

std::vector<double> momentum_history(const Trajectory& traj) {
  std::vector<double> p;
  p.reserve(traj.size());
  for (const auto& s : traj) p.push_back(expect_momentum(s));
  return p;
}

void check_quadrature(const std::vector<double>& p, double variation,
                      std::vector<std::string>* warnings) {
  if (!warnings || p.size() < 2) return;
  double scale = 0.0;
  for (double v : p) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (std::abs(p[k] - p[k - 1]) > variation * scale) {
      warnings->push_back("<P_x> varies by more than " + std::to_string(variation * 100.0) +
                          "% between samples " + std::to_string(k - 1) + " and " +
                          std::to_string(k) + "; momentum quadrature may be under-resolved");
      return;
    }
  }
}

double vector_potential_integral(const Trajectory& traj) {
  const auto& h = *traj.hamiltonian();
  const auto t = traj.times();
  std::vector<double> a(t.size());
  std::transform(t.begin(), t.end(), a.begin(), [&h](double s) { return h.A(s); });
  return trapezoid(t, a);
}

// Lab and boosted phase factors for one velocity.
struct FramePair {
  cplx lab{1.0, 0.0};
  cplx boosted{1.0, 0.0};
  double gamma_lab = 0.0;
  double gamma_boosted = 0.0;
  double boosted_defect = 0.0;
};

FramePair measure_frames(const Trajectory& traj, const BoostParams& boost,
                         const InvarianceOptions& options) {
  FramePair frames;
  frames.gamma_lab = aw_phase(traj, options.phase);
  if (boost.velocity == 0.0) {
    frames.gamma_boosted = frames.gamma_lab;
  } else {
    const Trajectory boosted = boost_trajectory(traj, boost, options.guard);
    frames.gamma_boosted = aw_phase(boosted, options.phase);
    frames.boosted_defect = cyclicity_defect(boosted);
  }
  frames.lab = std::polar(1.0, frames.gamma_lab);
  frames.boosted = std::polar(1.0, frames.gamma_boosted);
  if (boost.velocity == 0.0) frames.boosted_defect = cyclicity_defect(traj);
  return frames;
}

}  // namespace

cplx overlap_ratio_factor(const WaveFunction& psi0, const WaveFunction& psiT, double displacement,
                          const InvarianceOptions& options) {
  const double floor = options.phase.overlap_floor;
  const cplx forward = checked_overlap(psi0, psiT, floor);
  const cplx backward = checked_overlap(psiT, psi0, floor);
  const cplx shifted_forward = checked_overlap(psi0, translate(psiT, displacement, options.guard), floor);
  const cplx shifted_backward =
      checked_overlap(psiT, translate(psi0, -displacement, options.guard), floor);
  // Each (z / conj z)^{1/2} is e^{i arg z}; the two computed overlaps of a
  // pair are conjugates up to rounding, so both enter the representative.
  const cplx numerator = unit(shifted_forward + std::conj(shifted_backward));
  const cplx denominator = unit(forward + std::conj(backward));
  return numerator * std::conj(denominator);
}

cplx predicted_boost_factor(const Trajectory& traj, const BoostParams& boost,
                            const InvarianceOptions& options, std::vector<std::string>* warnings) {
  if (boost.velocity == 0.0) return {1.0, 0.0};
  const double v = boost.velocity;
  const cplx ratio = overlap_ratio_factor(traj.front(), traj.back(), v * traj.duration(), options);
  const auto p = momentum_history(traj);
  check_quadrature(p, options.quadrature_variation, warnings);
  const double momentum_integral = trapezoid(traj.times(), p);
  return ratio * std::polar(1.0, -v * momentum_integral / boost.hbar);
}

TransformationReport verify_transformation_law(const Trajectory& traj, const BoostParams& boost,
                                               const InvarianceOptions& options) {
  TransformationReport report;
  report.velocity = boost.velocity;
  const double v = boost.velocity;
  const double hbar = boost.hbar;

  const FramePair frames = measure_frames(traj, boost, options);
  report.gamma_aw_lab = frames.gamma_lab;
  report.gamma_aw_boosted = frames.gamma_boosted;
  report.lab_cyclicity_defect = cyclicity_defect(traj);
  report.boosted_cyclicity_defect = frames.boosted_defect;
  report.non_invariance_gap = std::abs(frames.boosted - frames.lab);

  const auto times = traj.times();
  const auto p = momentum_history(traj);
  check_quadrature(p, options.quadrature_variation, &report.warnings);
  report.momentum_integral = trapezoid(times, p);
  const double q0 = expect_position(traj.front());
  const double qT = expect_position(traj.back());
  report.endpoint_q_term = boost.mass * v * (qT - q0) / hbar;

  if (v == 0.0) {
    report.overlap_ratio_factor = {1.0, 0.0};
    report.predicted_factor = {1.0, 0.0};
  } else {
    report.overlap_ratio_factor =
        overlap_ratio_factor(traj.front(), traj.back(), v * traj.duration(), options);
    report.predicted_factor =
        report.overlap_ratio_factor * std::polar(1.0, -v * report.momentum_integral / hbar);
  }
  report.residual_eq8 = std::abs(frames.boosted - frames.lab * report.predicted_factor);

  if (traj.hamiltonian()) {
    const double a_integral = vector_potential_integral(traj);
    report.vector_potential_integral = a_integral;
    const cplx split = report.overlap_ratio_factor * std::polar(1.0, -v * a_integral / hbar) *
                       std::polar(1.0, -report.endpoint_q_term);
    report.residual_eq10 = std::abs(frames.boosted - frames.lab * split);

    report.cyclic_case_applicable = report.lab_cyclicity_defect < options.phase.cyclic_tolerance &&
                                    std::abs(a_integral) < options.vanishing_vector_potential;
    if (report.cyclic_case_applicable) {
      report.residual_eq11 = std::abs(frames.boosted - frames.lab * report.overlap_ratio_factor);
    }
  }
  return report;
}

EhrenfestProfile ehrenfest_decomposition(const Trajectory& traj) {
  if (!traj.hamiltonian()) {
    throw std::invalid_argument("Ehrenfest decomposition needs the trajectory's Hamiltonian");
  }
  if (traj.size() < 3) {
    throw ResolutionError("Ehrenfest decomposition needs at least 3 samples, got " +
                          std::to_string(traj.size()));
  }
  const auto& h = *traj.hamiltonian();
  std::vector<double> q(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) q[k] = expect_position(traj[k]);

  EhrenfestProfile profile;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double t = traj[k].time();
    const double h1 = t - traj[k - 1].time();
    const double h2 = traj[k + 1].time() - t;
    // Three-point derivative, second order on non-uniform spacing.
    const double dq = (h1 * h1 * q[k + 1] - h2 * h2 * q[k - 1] - (h1 * h1 - h2 * h2) * q[k]) /
                      (h1 * h2 * (h1 + h2));
    const double r = expect_momentum(traj[k]) - h.A(t) - h.mass * dq;
    profile.times.push_back(t);
    profile.residuals.push_back(r);
    profile.max_abs = std::max(profile.max_abs, std::abs(r));
  }
  return profile;
}

GaugeSplitResult verify_gauge_split_law(const Trajectory& traj, const BoostParams& boost,
                                        const InvarianceOptions& options) {
  if (!traj.hamiltonian()) {
    throw std::invalid_argument("gauge-split law needs the trajectory's Hamiltonian");
  }
  const TransformationReport report = verify_transformation_law(traj, boost, options);
  GaugeSplitResult result;
  result.residual = *report.residual_eq10;
  result.endpoint_factor = std::polar(1.0, -report.endpoint_q_term);
  result.lab_cyclic = report.lab_cyclicity_defect < options.phase.cyclic_tolerance;
  if (result.lab_cyclic) result.cyclic_endpoint_deviation = std::abs(result.endpoint_factor - 1.0);
  return result;
}

std::optional<CyclicCaseResult> verify_cyclic_special_case(const Trajectory& traj,
                                                           const BoostParams& boost,
                                                           const InvarianceOptions& options) {
  if (!traj.hamiltonian()) return std::nullopt;
  if (!(cyclicity_defect(traj) < options.phase.cyclic_tolerance)) return std::nullopt;
  if (!(std::abs(vector_potential_integral(traj)) < options.vanishing_vector_potential)) {
    return std::nullopt;
  }

  const double v = boost.velocity;
  const double duration = traj.duration();
  const FramePair frames = measure_frames(traj, boost, options);
  CyclicCaseResult result;
  if (v == 0.0) {
    result.residual = std::abs(frames.boosted - frames.lab);
    return result;
  }
  const cplx ratio = overlap_ratio_factor(traj.front(), traj.back(), v * duration, options);
  result.residual = std::abs(frames.boosted - frames.lab * ratio);
  const cplx doubled =
      overlap_ratio_factor(traj.front(), traj.back(), (2.0 * v) * (0.5 * duration), options);
  result.displacement_mismatch = std::abs(ratio - doubled);
  return result;
}

}  // namespace geomphase
