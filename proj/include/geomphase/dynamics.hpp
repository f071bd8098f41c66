#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "geomphase/wavefunction.hpp"

namespace geomphase {

/**
 * H = (P - A(t))^2 / 2m + V(Q, t) with a spatially uniform vector potential.
 *
 * Empty `potential` / `vector_potential` callables mean zero. Set
 * `time_independent` only when neither depends on t; the dense oracle
 * refuses anything else.
 */
struct HamiltonianSpec {
  double mass = 1.0;
  double hbar = 1.0;
  std::function<double(double x, double t)> potential;
  std::function<double(double t)> vector_potential;
  bool time_independent = true;
  std::string label;

  double V(double x, double t) const { return potential ? potential(x, t) : 0.0; }
  double A(double t) const { return vector_potential ? vector_potential(t) : 0.0; }

  static HamiltonianSpec free(double mass = 1.0, double hbar = 1.0);
  static HamiltonianSpec harmonic(double omega, double mass = 1.0, double hbar = 1.0);
  /// V(x) = sum_i coefficients[i] x^i
  static HamiltonianSpec polynomial(std::vector<double> coefficients, double mass = 1.0,
                                    double hbar = 1.0);

  /// Copy with a constant vector potential added to the existing one.
  HamiltonianSpec with_constant_vector_potential(double a0) const;
};

using HamiltonianPtr = std::shared_ptr<const HamiltonianSpec>;

/// <psi| H(t) |psi>, kinetic part in momentum space.
double expect_energy(const WaveFunction& psi, const HamiltonianSpec& h, double t);

/**
 * Time-ordered samples psi(t_0 = 0) ... psi(t_N = T) on one grid.
 * Construction validates the invariants: shared grid, strictly increasing
 * times, every state normalized within 1e-8.
 */
class Trajectory {
 public:
  explicit Trajectory(std::vector<WaveFunction> states, HamiltonianPtr hamiltonian = nullptr);

  std::size_t size() const { return states_.size(); }
  const WaveFunction& operator[](std::size_t k) const { return states_[k]; }
  const WaveFunction& front() const { return states_.front(); }
  const WaveFunction& back() const { return states_.back(); }
  const std::vector<WaveFunction>& states() const { return states_; }
  std::vector<double> times() const;
  double duration() const { return states_.back().time() - states_.front().time(); }
  const HamiltonianPtr& hamiltonian() const { return hamiltonian_; }
  const Grid& grid() const { return states_.front().grid(); }

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::vector<WaveFunction> states_;
  HamiltonianPtr hamiltonian_;
};

struct EvolveOptions {
  std::size_t sample_every = 1;
  GuardBand guard{};
  double max_norm_drift = 1e-10;
};

/**
 * Strang split-step propagation: half potential kick at t, kinetic step in
 * momentum space with A at the step midpoint, half potential kick at t + dt.
 * The returned trajectory holds psi0, every `sample_every`-th step, and the
 * final state. T = 0 yields the single-state trajectory.
 */
Trajectory evolve(const WaveFunction& psi0, HamiltonianPtr h, double duration,
                  std::size_t n_steps, const EvolveOptions& options = {});

/// Largest grid accepted by the dense oracle.
inline constexpr std::size_t kDenseOracleMaxPoints = 128;

/// Exact propagation by diagonalizing the dense n x n Hamiltonian (time
/// independent only). Returns `n_samples + 1` equally spaced states.
Trajectory evolve_dense_oracle(const WaveFunction& psi0, HamiltonianPtr h, double duration,
                               std::size_t n_samples = 1);

/// |psi(t)> -> e^{i f(Q, t)} |psi(t)>. The result carries no Hamiltonian,
/// since a general f changes both V and A.
Trajectory gauge_transform(const Trajectory& traj, const std::function<double(double x, double t)>& f);

/// Gauge f(x) = lambda x. The transformed states solve the Hamiltonian with
/// A -> A + hbar lambda, which the result carries when the input had one.
Trajectory linear_gauge_transform(const Trajectory& traj, double lambda);

/// Same state sequence with time stamps t -> warp(t). The warp must be
/// strictly increasing on the sample times; the Hamiltonian is dropped.
Trajectory retime(const Trajectory& traj, const std::function<double(double)>& warp);

/// Multiplies sample k by e^{i chi_k}. The Hamiltonian is dropped.
Trajectory phase_lift(const Trajectory& traj, const std::vector<double>& chi);

/// Sub-trajectory of samples [first, last].
Trajectory slice(const Trajectory& traj, std::size_t first, std::size_t last);

}  // namespace geomphase
