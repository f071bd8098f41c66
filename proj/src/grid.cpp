#include "geomphase/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geomphase {

Grid::Grid(std::size_t n_points, double x_min, double dx, double hbar)
    : n_points_(n_points), x_min_(x_min), dx_(dx), hbar_(hbar) {
  if (n_points < 8) {
    throw std::invalid_argument("grid needs at least 8 points, got " + std::to_string(n_points));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw std::invalid_argument("grid spacing must be positive and finite");
  }
  if (!std::isfinite(x_min)) {
    throw std::invalid_argument("grid origin must be finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("hbar must be positive and finite");
  }

  positions_.resize(n_points);
  wavenumbers_.resize(n_points);
  const double dk = 2.0 * std::numbers::pi / length();
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    positions_[k] = x_min + static_cast<double>(k) * dx;
    const std::ptrdiff_t j = (k < (n + 1) / 2) ? k : k - n;
    wavenumbers_[k] = dk * static_cast<double>(j);
  }
}

double Grid::dp() const { return 2.0 * std::numbers::pi * hbar_ / length(); }

bool Grid::operator==(const Grid& other) const {
  return n_points_ == other.n_points_ && x_min_ == other.x_min_ && dx_ == other.dx_ &&
         hbar_ == other.hbar_;
}

GridPtr make_grid(std::size_t n_points, double x_min, double dx, double hbar) {
  return std::make_shared<const Grid>(n_points, x_min, dx, hbar);
}

}  // namespace geomphase
