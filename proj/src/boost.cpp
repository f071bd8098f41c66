#include "geomphase/boost.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "geomphase/errors.hpp"

namespace geomphase {
namespace {

void require_compatible(const Grid& grid, const BoostParams& boost) {
  if (!(boost.mass > 0.0) || !(boost.hbar > 0.0)) {
    throw std::invalid_argument("boost needs positive mass and hbar");
  }
  if (!std::isfinite(boost.velocity)) throw std::invalid_argument("boost velocity must be finite");
  if (boost.hbar != grid.hbar()) throw std::invalid_argument("boost hbar differs from the grid's");
}

WaveFunction position_ramp(const WaveFunction& psi, const BoostParams& boost) {
  const double k = -boost.mass * boost.velocity / boost.hbar;
  return multiply_phase(psi, [k](double x) { return k * x; });
}

}  // namespace

WaveFunction apply_boost(const WaveFunction& psi, double t, const BoostParams& boost,
                         const GuardBand& guard) {
  require_compatible(psi.grid(), boost);
  if (boost.velocity == 0.0) return psi;
  const double v = boost.velocity;
  const WaveFunction shifted = translate(psi, v * t, guard);
  const cplx constant = std::polar(1.0, -boost.mass * v * v * t / (2.0 * boost.hbar));
  return position_ramp(shifted.scaled(constant), boost);
}

WaveFunction apply_boost_commuted(const WaveFunction& psi, double t, const BoostParams& boost,
                                  const GuardBand& guard) {
  require_compatible(psi.grid(), boost);
  if (boost.velocity == 0.0) return psi;
  const double v = boost.velocity;
  const cplx constant = std::polar(1.0, boost.mass * v * v * t / (2.0 * boost.hbar));
  return translate(position_ramp(psi, boost), v * t, guard).scaled(constant);
}

Trajectory boost_trajectory(const Trajectory& traj, const BoostParams& boost,
                            const GuardBand& guard) {
  std::vector<WaveFunction> states;
  states.reserve(traj.size());
  for (const auto& s : traj) {
    try {
      states.push_back(apply_boost(s, s.time(), boost, guard));
    } catch (const DomainOverflowError& e) {
      throw DomainOverflowError("boost_trajectory: sample at t = " + std::to_string(s.time()) +
                                    " overflows the guard band (" + e.what() + ")",
                                e.mass(), s.time());
    }
  }
  return Trajectory(std::move(states));
}

OperatorResiduals check_operator_transforms(const WaveFunction& psi, double t,
                                            const BoostParams& boost, const GuardBand& guard) {
  const WaveFunction boosted = apply_boost(psi, t, boost, guard);
  OperatorResiduals r;
  r.position = std::abs(expect_position(boosted) - (expect_position(psi) - boost.velocity * t));
  r.momentum =
      std::abs(expect_momentum(boosted) - (expect_momentum(psi) - boost.mass * boost.velocity));
  return r;
}

}  // namespace geomphase
