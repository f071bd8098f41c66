#include "geomphase/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geomphase {

WaveFunction gaussian_state(GridPtr grid, double center, double width, double momentum,
                            double time) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  const double amplitude = std::pow(std::numbers::pi * width * width, -0.25);
  const double hbar = grid->hbar();
  CVector psi(grid->size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double x = grid->position(k);
    const double u = (x - center) / width;
    psi[k] = amplitude * std::exp(-0.5 * u * u) * std::polar(1.0, momentum * x / hbar);
  }
  return WaveFunction(std::move(grid), std::move(psi), time);
}

WaveFunction coherent_state(GridPtr grid, cplx alpha, double omega, double mass, double time) {
  if (!(omega > 0.0) || !(mass > 0.0)) {
    throw std::invalid_argument("coherent state needs positive omega and mass");
  }
  const double hbar = grid->hbar();
  const double width = std::sqrt(hbar / (mass * omega));
  const double center = std::sqrt(2.0 * hbar / (mass * omega)) * alpha.real();
  const double momentum = std::sqrt(2.0 * mass * omega * hbar) * alpha.imag();
  return gaussian_state(std::move(grid), center, width, momentum, time);
}

WaveFunction plane_wave(GridPtr grid, double momentum, double time) {
  const double amplitude = 1.0 / std::sqrt(grid->length());
  const double hbar = grid->hbar();
  CVector psi(grid->size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    psi[k] = std::polar(amplitude, momentum * grid->position(k) / hbar);
  }
  return WaveFunction(std::move(grid), std::move(psi), time);
}

}  // namespace geomphase
