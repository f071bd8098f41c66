#pragma once

#include "geomphase/wavefunction.hpp"

namespace geomphase {

// Gaussian packets use the amplitude convention
//   psi(x) = (pi w^2)^{-1/4} exp(-(x - x0)^2 / (2 w^2) + i p0 x / hbar)
// so the momentum amplitude is a Gaussian of width hbar / w.

WaveFunction gaussian_state(GridPtr grid, double center, double width, double momentum,
                            double time = 0.0);

/// Oscillator coherent state |alpha> for mass m and frequency omega:
/// a Gaussian of width sqrt(hbar / (m omega)) centred at
/// sqrt(2 hbar / (m omega)) Re(alpha) with momentum sqrt(2 m omega hbar) Im(alpha).
/// The returned amplitudes carry no extra global phase.
WaveFunction coherent_state(GridPtr grid, cplx alpha, double omega, double mass = 1.0,
                            double time = 0.0);

/// e^{i p0 x / hbar} / sqrt(L). Periodic on the grid only when p0 is a
/// momentum sample.
WaveFunction plane_wave(GridPtr grid, double momentum, double time = 0.0);

}  // namespace geomphase
