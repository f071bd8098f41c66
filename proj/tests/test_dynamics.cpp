#include <cmath>

#include "doctest.h"
#include "geomphase/dynamics.hpp"
#include "geomphase/errors.hpp"
#include "geomphase/phases.hpp"
#include "geomphase/states.hpp"
#include "oracles.hpp"

using namespace geomphase;

namespace {

constexpr double kTwoPi = 2.0 * oracle::kPi;

HamiltonianPtr sho() { return std::make_shared<HamiltonianSpec>(HamiltonianSpec::harmonic(1.0)); }
HamiltonianPtr free_h() { return std::make_shared<HamiltonianSpec>(HamiltonianSpec::free()); }

double distance(const WaveFunction& a, const WaveFunction& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s * a.grid().dx());
}

}  // namespace

TEST_CASE("plane wave acquires exp(-i p0^2 T / 2m hbar)") {
  const auto g = make_grid(128, -8.0, 0.125);
  const double p0 = g->momentum(3);
  const auto psi0 = plane_wave(g, p0);
  EvolveOptions opts;
  opts.guard = GuardBand::disabled();
  const auto traj = evolve(psi0, free_h(), 1.7, 200, opts);
  CHECK(traj.back().time() == 1.7);
  const auto expected = psi0.scaled(std::polar(1.0, -p0 * p0 * 1.7 / 2.0));
  CHECK(distance(traj.back(), expected) < 1e-9);
}

TEST_CASE("coherent state returns to its ray after one period") {
  const auto g = make_grid(256, -16.0, 0.125);
  const auto psi0 = coherent_state(g, {std::sqrt(0.5), 0.0}, 1.0);
  const auto traj = evolve(psi0, sho(), kTwoPi, 4096, {.sample_every = 64});
  CHECK(1.0 - std::abs(inner_product(traj.front(), traj.back())) < 1e-6);
  CHECK(traj.size() == 65);
  double drift = 0.0;
  for (const auto& s : traj) drift = std::max(drift, std::abs(s.norm() - 1.0));
  CHECK(drift < 1e-10);
}

TEST_CASE("zero duration yields the initial state") {
  const auto g = make_grid(128, -8.0, 0.125);
  const auto psi0 = gaussian_state(g, 0.0, 1.0, 0.3);
  const auto traj = evolve(psi0, sho(), 0.0, 10);
  REQUIRE(traj.size() == 1);
  CHECK(distance(traj.front(), psi0) == 0.0);
  const auto dense = evolve_dense_oracle(psi0, sho(), 0.0);
  CHECK(distance(dense.back(), psi0) < 1e-12);
}

TEST_CASE("split-step agrees with the dense oracle") {
  const auto g = make_grid(128, -8.0, 0.125);
  const auto psi0 = coherent_state(g, {std::sqrt(0.5), 0.0}, 1.0);
  const auto dense = evolve_dense_oracle(psi0, sho(), kTwoPi);
  const auto split = evolve(psi0, sho(), kTwoPi, 4096, {.sample_every = 4096});
  CHECK(1.0 - std::abs(inner_product(split.back(), dense.back())) < 1e-6);

  SUBCASE("second-order convergence") {
    const double e1 = distance(evolve(psi0, sho(), kTwoPi, 256, {.sample_every = 256}).back(), dense.back());
    const double e2 = distance(evolve(psi0, sho(), kTwoPi, 512, {.sample_every = 512}).back(), dense.back());
    const double e3 = distance(evolve(psi0, sho(), kTwoPi, 1024, {.sample_every = 1024}).back(), dense.back());
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.3));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.3));
  }
}

TEST_CASE("dense oracle matches the free propagator built from a naive DFT") {
  const auto g = make_grid(64, -8.0, 0.25);
  const auto psi0 = gaussian_state(g, -1.0, 1.0, 0.8);
  const double T = 1.3;
  const auto dense = evolve_dense_oracle(psi0, free_h(), T, 2);
  CHECK(dense.size() == 3);

  std::vector<oracle::cplx> in(psi0.amplitudes().begin(), psi0.amplitudes().end());
  auto spectrum = oracle::naive_dft(in, -1);
  const double n = static_cast<double>(g->size());
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double jj = j < g->size() / 2 ? static_cast<double>(j) : static_cast<double>(j) - n;
    const double p = kTwoPi * jj / g->length();
    spectrum[j] *= std::polar(1.0, -p * p * T / 2.0);
  }
  auto out = oracle::naive_dft(spectrum, +1);
  double worst = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k) worst = std::max(worst, std::abs(out[k] / n - dense.back()[k]));
  CHECK(worst < 1e-9);

  CHECK_THROWS_AS(evolve_dense_oracle(gaussian_state(make_grid(256, -16.0, 0.125), 0.0, 1.0, 0.0), free_h(), 1.0),
                  OracleSizeError);
}

TEST_CASE("free Gaussian follows the closed form") {
  const auto g = make_grid(1024, -40.0, 0.078125);
  const auto traj = evolve(gaussian_state(g, 0.0, 1.0, 1.0), free_h(), 2.0, 8192, {.sample_every = 8192});
  double worst = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    worst = std::max(worst, std::abs(traj.back()[k] - oracle::free_gaussian(g->position(k), 2.0, 1.0, 0.0, 1.0)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("errors") {
  const auto g = make_grid(128, -8.0, 0.125);
  const auto drifting = gaussian_state(g, 0.0, 1.0, 6.0);
  CHECK_THROWS_AS(evolve(drifting, free_h(), 2.0, 200), DomainOverflowError);
  auto nan_h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::free());
  auto bad = std::make_shared<HamiltonianSpec>(*nan_h);
  bad->potential = [](double, double) { return std::nan(""); };
  CHECK_THROWS_AS(evolve(gaussian_state(g, 0.0, 1.0, 0.0), bad, 1.0, 10), NumericalBlowupError);
  const auto psi = gaussian_state(g, 0.0, 1.0, 0.0);
  CHECK_THROWS_AS(Trajectory({psi, psi.with_time(0.0)}), std::invalid_argument);
}

TEST_CASE("gauge transformations") {
  const auto g = make_grid(256, -16.0, 0.125);
  const auto traj = evolve(coherent_state(g, {0.7, 0.2}, 1.0), sho(), 2.0, 400);

  SUBCASE("zero and constant gauges") {
    const auto same = gauge_transform(traj, [](double, double) { return 0.0; });
    for (std::size_t k = 0; k < traj.size(); ++k) CHECK(distance(same[k], traj[k]) == 0.0);
    const auto global = gauge_transform(traj, [](double, double) { return 0.9; });
    CHECK(global.hamiltonian() == nullptr);
    CHECK(std::abs(total_phase(global) - total_phase(traj)) < 1e-12);
    CHECK(std::abs(dynamic_phase(global) - dynamic_phase(traj)) < 1e-12);
    CHECK(std::abs(aw_phase(global) - aw_phase(traj)) < 1e-12);
  }
  SUBCASE("linear gauge shifts the momentum by hbar lambda") {
    const double lambda = 1.0 * 0.4;  // m dv / hbar with dv = 0.4
    const auto ramped = linear_gauge_transform(traj, lambda);
    REQUIRE(ramped.hamiltonian() != nullptr);
    CHECK(ramped.hamiltonian()->A(0.3) == doctest::Approx(lambda));
    for (std::size_t k = 0; k < traj.size(); ++k) {
      CHECK(std::abs(expect_momentum(ramped[k]) - expect_momentum(traj[k]) - lambda) < 1e-10);
      CHECK(std::abs(ramped[k].norm() - 1.0) < 1e-12);
    }
  }
}
