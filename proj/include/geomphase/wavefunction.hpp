#pragma once

#include <span>

#include "geomphase/grid.hpp"

namespace geomphase {

/// Guard-band policy for operations that can wrap support around the
/// periodic boundary. The band is the outer `fraction` of the box on each
/// side; more than `max_mass` probability there counts as an overflow.
struct GuardBand {
  double fraction = 0.05;
  double max_mass = 1e-8;
  bool enabled = true;

  static GuardBand disabled() { return GuardBand{0.05, 1e-8, false}; }
};

/// Complex amplitudes on a grid, tagged with a time. Immutable.
class WaveFunction {
 public:
  WaveFunction(GridPtr grid, CVector amplitudes, double time = 0.0);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx operator[](std::size_t k) const { return amplitudes_[k]; }
  std::size_t size() const { return amplitudes_.size(); }
  double time() const { return time_; }

  /// sqrt(dx * sum |psi_k|^2)
  double norm() const;
  WaveFunction normalized() const;
  WaveFunction with_time(double time) const;
  WaveFunction scaled(cplx factor) const;

 private:
  GridPtr grid_;
  CVector amplitudes_;
  double time_;
};

/// dx * sum conj(a_k) b_k. Throws GridMismatchError for different grids.
cplx inner_product(const WaveFunction& a, const WaveFunction& b);

/**
 * Momentum-space amplitudes phi(p_j) in DFT order, normalized against the
 * continuous Fourier transform
 *   phi(p) = (2 pi hbar)^{-1/2} \int psi(x) e^{-i p x / hbar} dx
 * so that sum_j |phi_j|^2 * grid.dp() equals the squared norm.
 */
CVector to_momentum(const WaveFunction& psi);
WaveFunction from_momentum(GridPtr grid, std::span<const cplx> phi, double time = 0.0);

/// <Q> = dx * sum x_k |psi_k|^2. Requires a normalized state.
double expect_position(const WaveFunction& psi);
/// <P> evaluated in momentum space. Requires a normalized state.
double expect_momentum(const WaveFunction& psi);

/// Probability held in the outer `fraction` of the box on either side.
double guard_band_mass(const WaveFunction& psi, double fraction);
/// Throws DomainOverflowError when the guard band holds too much mass.
void check_guard_band(const WaveFunction& psi, const GuardBand& guard, const char* context);

/// Returns psi(x + a), i.e. e^{i a P / hbar} psi, by a spectral phase
/// e^{i k_j a}. Exact for any real a; the centre of a wave packet moves to
/// x0 - a. The guard band is checked before and after.
WaveFunction translate(const WaveFunction& psi, double a, const GuardBand& guard = {});

/// Pointwise e^{i f(x_k)} psi_k.
template <typename Fn>
WaveFunction multiply_phase(const WaveFunction& psi, Fn&& phase_of_x) {
  CVector out(psi.amplitudes().begin(), psi.amplitudes().end());
  const auto& grid = psi.grid();
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] *= std::polar(1.0, static_cast<double>(phase_of_x(grid.position(k))));
  }
  return WaveFunction(psi.grid_ptr(), std::move(out), psi.time());
}

}  // namespace geomphase
