#include "geomphase/dynamics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "geomphase/errors.hpp"
#include "geomphase/spectral.hpp"

namespace geomphase {
namespace {

constexpr double kTrajectoryNormTolerance = 1e-8;

void require_compatible(const Grid& grid, const HamiltonianSpec& h) {
  if (!(h.mass > 0.0)) throw std::invalid_argument("Hamiltonian mass must be positive");
  if (h.hbar != grid.hbar()) {
    throw std::invalid_argument("Hamiltonian hbar differs from the grid's hbar");
  }
}

void require_normalized(const WaveFunction& psi, const char* what) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > kTrajectoryNormTolerance) {
    throw NormalizationError(std::string(what) + ": initial state norm is " + std::to_string(n));
  }
}

// e^{-i V(x_k, t) dt / (2 hbar)}
void fill_half_kick(CVector& out, const Grid& grid, const HamiltonianSpec& h, double t,
                    double dt) {
  const double factor = -0.5 * dt / h.hbar;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::polar(1.0, factor * h.V(grid.position(k), t));
  }
}

// e^{-i (p_j - A)^2 dt / (2 m hbar)}, with the 1/n of the inverse DFT folded in.
void fill_kinetic(CVector& out, const Grid& grid, const HamiltonianSpec& h, double a, double dt) {
  const double factor = -dt / (2.0 * h.mass * h.hbar);
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double kinetic = grid.momentum(j) - a;
    out[j] = std::polar(inv_n, factor * kinetic * kinetic);
  }
}

}  // namespace

HamiltonianSpec HamiltonianSpec::free(double mass, double hbar) {
  HamiltonianSpec h;
  h.mass = mass;
  h.hbar = hbar;
  h.label = "free";
  return h;
}

HamiltonianSpec HamiltonianSpec::harmonic(double omega, double mass, double hbar) {
  HamiltonianSpec h;
  h.mass = mass;
  h.hbar = hbar;
  const double k = mass * omega * omega;
  h.potential = [k](double x, double) { return 0.5 * k * x * x; };
  h.label = "harmonic(omega=" + std::to_string(omega) + ")";
  return h;
}

HamiltonianSpec HamiltonianSpec::polynomial(std::vector<double> coefficients, double mass,
                                            double hbar) {
  HamiltonianSpec h;
  h.mass = mass;
  h.hbar = hbar;
  h.label = "polynomial(degree=" + std::to_string(coefficients.empty() ? 0 : coefficients.size() - 1) + ")";
  h.potential = [c = std::move(coefficients)](double x, double) {
    double value = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * x + *it;
    return value;
  };
  return h;
}

HamiltonianSpec HamiltonianSpec::with_constant_vector_potential(double a0) const {
  HamiltonianSpec h = *this;
  if (vector_potential) {
    h.vector_potential = [base = vector_potential, a0](double t) { return base(t) + a0; };
  } else {
    h.vector_potential = [a0](double) { return a0; };
  }
  h.label = label + " + A=" + std::to_string(a0);
  return h;
}

double expect_energy(const WaveFunction& psi, const HamiltonianSpec& h, double t) {
  const auto& grid = psi.grid();
  const CVector phi = to_momentum(psi);
  const double a = h.A(t);
  double kinetic = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double p = grid.momentum(j) - a;
    kinetic += p * p * std::norm(phi[j]);
  }
  kinetic *= grid.dp() / (2.0 * h.mass);
  double potential = 0.0;
  if (h.potential) {
    for (std::size_t k = 0; k < psi.size(); ++k) {
      potential += h.V(grid.position(k), t) * std::norm(psi[k]);
    }
    potential *= grid.dx();
  }
  return kinetic + potential;
}

Trajectory::Trajectory(std::vector<WaveFunction> states, HamiltonianPtr hamiltonian)
    : states_(std::move(states)), hamiltonian_(std::move(hamiltonian)) {
  if (states_.empty()) throw std::invalid_argument("trajectory needs at least one state");
  const auto& grid = states_.front().grid();
  for (std::size_t k = 0; k < states_.size(); ++k) {
    const auto& s = states_[k];
    if (!(s.grid() == grid)) throw GridMismatchError("trajectory states live on different grids");
    if (k > 0 && !(s.time() > states_[k - 1].time())) {
      throw std::invalid_argument("trajectory times must be strictly increasing (sample " +
                                  std::to_string(k) + ")");
    }
    const double n = s.norm();
    if (std::abs(n - 1.0) > kTrajectoryNormTolerance) {
      throw NormalizationError("trajectory sample " + std::to_string(k) + " has norm " +
                               std::to_string(n));
    }
  }
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(states_.size());
  for (const auto& s : states_) t.push_back(s.time());
  return t;
}

Trajectory evolve(const WaveFunction& psi0, HamiltonianPtr h, double duration,
                  std::size_t n_steps, const EvolveOptions& options) {
  if (!h) throw std::invalid_argument("evolve needs a Hamiltonian");
  const auto& grid = psi0.grid();
  require_compatible(grid, *h);
  require_normalized(psi0, "evolve");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("evolution duration must be finite and non-negative");
  }
  if (options.sample_every == 0) throw std::invalid_argument("sample_every must be >= 1");
  check_guard_band(psi0, options.guard, "evolve");

  std::vector<WaveFunction> samples;
  samples.push_back(psi0);
  if (duration == 0.0) return Trajectory(std::move(samples), std::move(h));
  if (n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");

  const std::size_t n = grid.size();
  const double t0 = psi0.time();
  const double dt = duration / static_cast<double>(n_steps);
  const double norm0 = psi0.norm();

  CVector psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  CVector spectrum(n);
  CVector kick_start(n), kick_end(n), kinetic(n);
  if (h->time_independent) {
    fill_half_kick(kick_start, grid, *h, t0, dt);
    kick_end = kick_start;
    fill_kinetic(kinetic, grid, *h, h->A(t0), dt);
  }

  for (std::size_t step = 1; step <= n_steps; ++step) {
    const double t_start = t0 + static_cast<double>(step - 1) * dt;
    const double t_end = t0 + static_cast<double>(step) * dt;
    if (!h->time_independent) {
      fill_half_kick(kick_start, grid, *h, t_start, dt);
      fill_half_kick(kick_end, grid, *h, t_end, dt);
      fill_kinetic(kinetic, grid, *h, h->A(t_start + 0.5 * dt), dt);
    }
    for (std::size_t k = 0; k < n; ++k) psi[k] *= kick_start[k];
    spectral::forward(psi, spectrum);
    for (std::size_t j = 0; j < n; ++j) spectrum[j] *= kinetic[j];
    spectral::inverse(spectrum, psi);
    for (std::size_t k = 0; k < n; ++k) psi[k] *= kick_end[k];

    if (step % options.sample_every != 0 && step != n_steps) continue;

    const double t = (step == n_steps) ? t0 + duration : t_end;
    WaveFunction sample(psi0.grid_ptr(), psi, t);
    for (const auto& c : sample.amplitudes()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw NumericalBlowupError("non-finite amplitude at t = " + std::to_string(t));
      }
    }
    const double drift = std::abs(sample.norm() - norm0);
    if (drift > options.max_norm_drift) {
      throw NumericalBlowupError("norm drifted by " + std::to_string(drift) + " at t = " +
                                 std::to_string(t));
    }
    check_guard_band(sample, options.guard, "evolve");
    samples.push_back(std::move(sample));
  }
  return Trajectory(std::move(samples), std::move(h));
}

Trajectory evolve_dense_oracle(const WaveFunction& psi0, HamiltonianPtr h, double duration,
                               std::size_t n_samples) {
  if (!h) throw std::invalid_argument("dense oracle needs a Hamiltonian");
  const auto& grid = psi0.grid();
  const std::size_t n = grid.size();
  if (n > kDenseOracleMaxPoints) {
    throw OracleSizeError("dense oracle limited to " + std::to_string(kDenseOracleMaxPoints) +
                          " grid points, got " + std::to_string(n));
  }
  if (!h->time_independent) {
    throw std::invalid_argument("dense oracle needs a time-independent Hamiltonian");
  }
  require_compatible(grid, *h);
  require_normalized(psi0, "evolve_dense_oracle");
  if (!(duration >= 0.0)) throw std::invalid_argument("duration must be non-negative");

  std::vector<WaveFunction> samples;
  samples.push_back(psi0);
  if (duration == 0.0) return Trajectory(std::move(samples), std::move(h));
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");

  const double t0 = psi0.time();
  const double a = h->A(t0);

  // Kinetic operator column by column: F^{-1} diag(T_j) F e_b.
  Eigen::MatrixXcd hamiltonian(n, n);
  CVector column(n), spectrum(n);
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(column.begin(), column.end(), cplx{0.0});
    column[b] = 1.0;
    spectral::forward(column, spectrum);
    for (std::size_t j = 0; j < n; ++j) {
      const double p = grid.momentum(j) - a;
      spectrum[j] *= p * p / (2.0 * h->mass * static_cast<double>(n));
    }
    spectral::inverse(spectrum, column);
    for (std::size_t r = 0; r < n; ++r) hamiltonian(r, b) = column[r];
    hamiltonian(b, b) += h->V(grid.position(b), t0);
  }
  const Eigen::MatrixXcd hermitian = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) throw NumericalBlowupError("dense diagonalization failed");

  const Eigen::MatrixXcd& vectors = solver.eigenvectors();
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const Eigen::VectorXcd initial =
      Eigen::Map<const Eigen::VectorXcd>(psi0.amplitudes().data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXcd coefficients = vectors.adjoint() * initial;

  for (std::size_t s = 1; s <= n_samples; ++s) {
    const double elapsed =
        (s == n_samples) ? duration : duration * static_cast<double>(s) / static_cast<double>(n_samples);
    Eigen::VectorXcd evolved = coefficients;
    for (Eigen::Index i = 0; i < evolved.size(); ++i) {
      evolved[i] *= std::polar(1.0, -energies[i] * elapsed / h->hbar);
    }
    const Eigen::VectorXcd psi = vectors * evolved;
    samples.emplace_back(psi0.grid_ptr(), CVector(psi.data(), psi.data() + n), t0 + elapsed);
  }
  return Trajectory(std::move(samples), std::move(h));
}

Trajectory gauge_transform(const Trajectory& traj,
                           const std::function<double(double x, double t)>& f) {
  std::vector<WaveFunction> states;
  states.reserve(traj.size());
  for (const auto& s : traj) {
    const double t = s.time();
    states.push_back(multiply_phase(s, [&](double x) { return f(x, t); }));
  }
  return Trajectory(std::move(states));
}

Trajectory linear_gauge_transform(const Trajectory& traj, double lambda) {
  std::vector<WaveFunction> states;
  states.reserve(traj.size());
  for (const auto& s : traj) {
    states.push_back(multiply_phase(s, [lambda](double x) { return lambda * x; }));
  }
  HamiltonianPtr h;
  if (traj.hamiltonian()) {
    const auto& base = *traj.hamiltonian();
    h = std::make_shared<const HamiltonianSpec>(
        base.with_constant_vector_potential(base.hbar * lambda));
  }
  return Trajectory(std::move(states), std::move(h));
}

Trajectory retime(const Trajectory& traj, const std::function<double(double)>& warp) {
  std::vector<WaveFunction> states;
  states.reserve(traj.size());
  for (const auto& s : traj) states.push_back(s.with_time(warp(s.time())));
  return Trajectory(std::move(states));
}

Trajectory phase_lift(const Trajectory& traj, const std::vector<double>& chi) {
  if (chi.size() != traj.size()) {
    throw std::invalid_argument("phase_lift needs one phase per sample");
  }
  std::vector<WaveFunction> states;
  states.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    states.push_back(traj[k].scaled(std::polar(1.0, chi[k])));
  }
  return Trajectory(std::move(states));
}

Trajectory slice(const Trajectory& traj, std::size_t first, std::size_t last) {
  if (first > last || last >= traj.size()) throw std::out_of_range("trajectory slice out of range");
  std::vector<WaveFunction> states(traj.states().begin() + static_cast<std::ptrdiff_t>(first),
                                   traj.states().begin() + static_cast<std::ptrdiff_t>(last) + 1);
  return Trajectory(std::move(states), traj.hamiltonian());
}

}  // namespace geomphase
