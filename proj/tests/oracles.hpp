#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's spectral or propagation code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Composite Simpson rule on [a, b] with an even number of panels.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  cplx sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// Freely spreading Gaussian with amplitude width w, initial centre x0 and
/// momentum p0 (initial phase e^{i p0 x / hbar}), in closed form.
inline cplx free_gaussian(double x, double t, double w, double x0, double p0, double m = 1.0,
                          double hbar = 1.0) {
  const double tau = hbar * t / (m * w * w);
  const cplx spread(1.0, tau);
  const double shift = x - x0 - p0 * t / m;
  const cplx envelope = std::exp(-shift * shift / (2.0 * w * w * spread));
  const cplx phase = std::polar(1.0, p0 * x / hbar - p0 * p0 * t / (2.0 * m * hbar));
  return std::pow(kPi * w * w, -0.25) / std::sqrt(spread) * envelope * phase;
}

/// Continuous Fourier transform of the initial Gaussian above,
/// phi(p) = (2 pi hbar)^{-1/2} \int psi(x) e^{-i p x / hbar} dx.
inline cplx gaussian_momentum(double p, double w, double x0, double p0, double hbar = 1.0) {
  const double q = p - p0;
  return std::pow(w * w / (kPi * hbar * hbar), 0.25) * std::exp(-q * q * w * w / (2.0 * hbar * hbar)) *
         std::polar(1.0, -q * x0 / hbar);
}

/// <psi(0)|psi(T)> for the free Gaussian by Simpson quadrature on a wide box.
inline cplx free_gaussian_overlap(double T, double w, double x0, double p0, double m = 1.0,
                                  double hbar = 1.0) {
  const double half = 40.0 * w + std::abs(p0) * T / m + std::abs(x0);
  return simpson(
      [&](double x) {
        return std::conj(free_gaussian(x, 0.0, w, x0, p0, m, hbar)) * free_gaussian(x, T, w, x0, p0, m, hbar);
      },
      -half, half, 20000);
}

/// Energy of the free Gaussian: p0^2/2m + hbar^2/(4 m w^2).
inline double free_gaussian_energy(double w, double p0, double m = 1.0, double hbar = 1.0) {
  return p0 * p0 / (2.0 * m) + hbar * hbar / (4.0 * m * w * w);
}

/// Naive O(n^2) DFT, forward sign e^{-2 pi i jk/n}.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& in, int sign = -1) {
  const std::size_t n = in.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += in[k] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n));
    }
    out[j] = sum;
  }
  return out;
}

/// Classical trajectory of the oscillator coherent state with real alpha.
struct Classical {
  double x;
  double p;
};
inline Classical coherent_classical(double x0, double t, double omega, double m = 1.0) {
  return {x0 * std::cos(omega * t), -m * omega * x0 * std::sin(omega * t)};
}

}  // namespace oracle
