#include "geomphase/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geomphase/errors.hpp"
#include "geomphase/spectral.hpp"

namespace geomphase {
namespace {

constexpr double kNormalizationTolerance = 1e-6;

void require_normalized(const WaveFunction& psi, const char* what) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > kNormalizationTolerance) {
    throw NormalizationError(std::string(what) + ": state norm is " + std::to_string(n) +
                             ", expected 1");
  }
}

}  // namespace

WaveFunction::WaveFunction(GridPtr grid, CVector amplitudes, double time)
    : grid_(std::move(grid)), amplitudes_(std::move(amplitudes)), time_(time) {
  if (!grid_) throw std::invalid_argument("wave function needs a grid");
  if (amplitudes_.size() != grid_->size()) {
    throw GridMismatchError("amplitude count " + std::to_string(amplitudes_.size()) +
                            " does not match grid size " + std::to_string(grid_->size()));
  }
}

double WaveFunction::norm() const {
  double sum = 0.0;
  for (const auto& c : amplitudes_) sum += std::norm(c);
  return std::sqrt(grid_->dx() * sum);
}

WaveFunction WaveFunction::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NormalizationError("cannot normalize a state of norm " + std::to_string(n));
  }
  return scaled(1.0 / n);
}

WaveFunction WaveFunction::with_time(double time) const {
  return WaveFunction(grid_, amplitudes_, time);
}

WaveFunction WaveFunction::scaled(cplx factor) const {
  CVector out(amplitudes_);
  for (auto& c : out) c *= factor;
  return WaveFunction(grid_, std::move(out), time_);
}

cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
  if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid())) {
    throw GridMismatchError("inner product of states on different grids");
  }
  cplx sum = 0.0;
  const auto lhs = a.amplitudes();
  const auto rhs = b.amplitudes();
  for (std::size_t k = 0; k < lhs.size(); ++k) sum += std::conj(lhs[k]) * rhs[k];
  return sum * a.grid().dx();
}

CVector to_momentum(const WaveFunction& psi) {
  const auto& grid = psi.grid();
  CVector phi(grid.size());
  spectral::forward(psi.amplitudes(), phi);
  const double scale = grid.dx() / std::sqrt(2.0 * std::numbers::pi * grid.hbar());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    phi[j] *= scale * std::polar(1.0, -grid.wavenumber(j) * grid.x_min());
  }
  return phi;
}

WaveFunction from_momentum(GridPtr grid, std::span<const cplx> phi, double time) {
  if (phi.size() != grid->size()) {
    throw GridMismatchError("momentum amplitudes do not match grid size");
  }
  CVector shifted(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    shifted[j] = phi[j] * std::polar(1.0, grid->wavenumber(j) * grid->x_min());
  }
  CVector psi(phi.size());
  spectral::inverse(shifted, psi);
  const double scale = grid->dp() / std::sqrt(2.0 * std::numbers::pi * grid->hbar());
  for (auto& c : psi) c *= scale;
  return WaveFunction(std::move(grid), std::move(psi), time);
}

double expect_position(const WaveFunction& psi) {
  require_normalized(psi, "expect_position");
  const auto& grid = psi.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) sum += grid.position(k) * std::norm(psi[k]);
  return sum * grid.dx();
}

double expect_momentum(const WaveFunction& psi) {
  require_normalized(psi, "expect_momentum");
  const auto& grid = psi.grid();
  const CVector phi = to_momentum(psi);
  double sum = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) sum += grid.momentum(j) * std::norm(phi[j]);
  return sum * grid.dp();
}

double guard_band_mass(const WaveFunction& psi, double fraction) {
  const auto& grid = psi.grid();
  const double band = fraction * grid.length();
  const double lo = grid.x_min() + band;
  const double hi = grid.x_max() - band;
  double sum = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double x = grid.position(k);
    if (x < lo || x >= hi) sum += std::norm(psi[k]);
  }
  return sum * grid.dx();
}

void check_guard_band(const WaveFunction& psi, const GuardBand& guard, const char* context) {
  if (!guard.enabled) return;
  const double mass = guard_band_mass(psi, guard.fraction);
  if (mass > guard.max_mass) {
    throw DomainOverflowError(std::string(context) + ": guard band holds probability " +
                                  std::to_string(mass) + " at t = " + std::to_string(psi.time()),
                              mass, psi.time());
  }
}

WaveFunction translate(const WaveFunction& psi, double a, const GuardBand& guard) {
  check_guard_band(psi, guard, "translate (input)");
  const auto& grid = psi.grid();
  const std::size_t n = grid.size();
  CVector spectrum(n);
  spectral::forward(psi.amplitudes(), spectrum);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    spectrum[j] *= inv_n * std::polar(1.0, grid.wavenumber(j) * a);
  }
  CVector out(n);
  spectral::inverse(spectrum, out);
  WaveFunction result(psi.grid_ptr(), std::move(out), psi.time());
  check_guard_band(result, guard, "translate (output)");
  return result;
}

}  // namespace geomphase
