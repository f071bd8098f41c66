#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace geomphase {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/**
 * Uniform periodic 1D grid.
 *
 * Position samples are x_k = x_min + k*dx. Momentum samples p_j = hbar*k_j
 * follow the native DFT layout: non-negative wavenumbers first, then the
 * negative ones (the Nyquist bin is counted as negative).
 */
class Grid {
 public:
  Grid(std::size_t n_points, double x_min, double dx, double hbar = 1.0);

  std::size_t size() const { return n_points_; }
  double x_min() const { return x_min_; }
  double dx() const { return dx_; }
  double length() const { return dx_ * static_cast<double>(n_points_); }
  double x_max() const { return x_min_ + length(); }
  double hbar() const { return hbar_; }

  /// Momentum-space measure 2*pi*hbar / L.
  double dp() const;

  double position(std::size_t k) const { return positions_[k]; }
  double wavenumber(std::size_t j) const { return wavenumbers_[j]; }
  double momentum(std::size_t j) const { return hbar_ * wavenumbers_[j]; }

  std::span<const double> positions() const { return positions_; }
  std::span<const double> wavenumbers() const { return wavenumbers_; }

  bool operator==(const Grid& other) const;

 private:
  std::size_t n_points_;
  double x_min_;
  double dx_;
  double hbar_;
  std::vector<double> positions_;
  std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::size_t n_points, double x_min, double dx, double hbar = 1.0);

}  // namespace geomphase
