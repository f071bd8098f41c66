#pragma once

#include "geomphase/dynamics.hpp"

namespace geomphase {

/// Passive Galilean boost along x with velocity v.
struct BoostParams {
  double velocity = 0.0;
  double mass = 1.0;
  double hbar = 1.0;
};

/**
 * U_G(t) psi for the passive boost
 *   U_G(t) = e^{-i m v Q / hbar} e^{i v t P / hbar} e^{-i m v^2 t / (2 hbar)},
 * i.e. (U_G psi)(x) = e^{-i m v x / hbar} e^{-i m v^2 t / (2 hbar)} psi(x + v t).
 */
WaveFunction apply_boost(const WaveFunction& psi, double t, const BoostParams& boost,
                         const GuardBand& guard = {});

/// The same operator with the exponentials in the opposite order,
///   e^{i v t P / hbar} e^{-i m v Q / hbar} e^{+i m v^2 t / (2 hbar)}.
WaveFunction apply_boost_commuted(const WaveFunction& psi, double t, const BoostParams& boost,
                                  const GuardBand& guard = {});

/// Boosts every sample at its own time stamp. The result carries no
/// Hamiltonian. A DomainOverflowError names the first failing sample time.
Trajectory boost_trajectory(const Trajectory& traj, const BoostParams& boost,
                            const GuardBand& guard = {});

struct OperatorResiduals {
  double position = 0.0;  ///< |<Q>_boosted - (<Q> - v t)|
  double momentum = 0.0;  ///< |<P>_boosted - (<P> - m v)|
};

OperatorResiduals check_operator_transforms(const WaveFunction& psi, double t,
                                            const BoostParams& boost, const GuardBand& guard = {});

}  // namespace geomphase
