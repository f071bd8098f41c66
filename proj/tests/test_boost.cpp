#include <cmath>
#include <random>

#include "doctest.h"
#include "geomphase/boost.hpp"
#include "geomphase/errors.hpp"
#include "geomphase/phases.hpp"
#include "geomphase/states.hpp"
#include "oracles.hpp"

using namespace geomphase;

namespace {

GridPtr grid() { return make_grid(512, -32.0, 0.125); }

double max_diff(const WaveFunction& a, const WaveFunction& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("trivial boosts") {
  const auto psi = gaussian_state(grid(), 1.0, 1.2, 0.4);
  CHECK(max_diff(apply_boost(psi, 0.8, {.velocity = 0.0}), psi) < 1e-14);

  const auto ramp_only = apply_boost(psi, 0.0, {.velocity = 0.9, .mass = 2.0});
  CHECK(std::abs(expect_position(ramp_only) - expect_position(psi)) < 1e-10);
  CHECK(std::abs(expect_momentum(ramp_only) - (expect_momentum(psi) - 1.8)) < 1e-8);

  const auto r0 = check_operator_transforms(psi, 0.7, {.velocity = 0.0});
  CHECK(r0.position < 1e-12);
  CHECK(r0.momentum < 1e-12);
  const auto rt = check_operator_transforms(psi, 0.0, {.velocity = -1.4});
  CHECK(rt.position < 1e-10);
  CHECK(rt.momentum < 1e-8);
}

TEST_CASE("boosted Gaussian moves to x0 - vt with momentum p0 - mv") {
  const auto psi = gaussian_state(grid(), 2.0, 0.9, 0.6);
  const double v = 1.3, t = 0.7;
  const auto boosted = apply_boost(psi, t, {.velocity = v});
  CHECK(std::abs(expect_position(boosted) - (2.0 - v * t)) < 1e-8);
  CHECK(std::abs(expect_momentum(boosted) - (0.6 - v)) < 1e-8);
  CHECK(std::abs(boosted.norm() - 1.0) < 1e-12);
  const auto r = check_operator_transforms(psi, t, {.velocity = v});
  CHECK(r.position < 1e-8);
  CHECK(r.momentum < 1e-8);

  // Closed form (U_G psi)(x) = e^{-i m v x} e^{-i m v^2 t / 2} psi(x + v t).
  const auto& g = psi.grid();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.position(k);
    const cplx expected = std::polar(1.0, -v * x - v * v * t / 2.0) *
                          std::pow(oracle::kPi * 0.81, -0.25) *
                          std::exp(-(x + v * t - 2.0) * (x + v * t - 2.0) / (2.0 * 0.81)) *
                          std::polar(1.0, 0.6 * (x + v * t));
    worst = std::max(worst, std::abs(boosted[k] - expected));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("momentum sign on a plane wave") {
  const auto g = make_grid(128, -8.0, 0.125);
  // m v equal to one momentum spacing keeps the boosted wave on the grid.
  const double v = g->dp();
  const auto pw = plane_wave(g, g->momentum(3));
  const auto boosted = apply_boost(pw, 0.4, {.velocity = v}, GuardBand::disabled());
  CHECK(std::abs(expect_momentum(boosted) - g->momentum(2)) < 1e-10);
  const auto phi = to_momentum(boosted);
  CHECK(std::abs(phi[2]) * std::sqrt(g->dp()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factorization orderings agree") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    const auto psi = gaussian_state(grid(), 3.0 * u(rng), 1.0 + 0.3 * u(rng), 2.0 * u(rng));
    const BoostParams b{.velocity = 2.0 * u(rng), .mass = 1.0 + 0.5 * u(rng)};
    const double t = 1.0 + u(rng);
    CHECK(max_diff(apply_boost(psi, t, b), apply_boost_commuted(psi, t, b)) < 1e-12);
  }
}

TEST_CASE("random Gaussians satisfy the operator identities") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> vel(-2.0, 2.0), time(0.0, 2.0), pos(-4.0, 4.0), mom(-2.0, 2.0),
      width(0.6, 1.6);
  for (int i = 0; i < 50; ++i) {
    const auto psi = gaussian_state(grid(), pos(rng), width(rng), mom(rng));
    const auto r = check_operator_transforms(psi, time(rng), {.velocity = vel(rng)});
    CHECK(r.position < 1e-10);
    CHECK(r.momentum < 1e-8);
  }
}

TEST_CASE("boosting trajectories") {
  auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::harmonic(1.0));
  const auto traj = evolve(coherent_state(grid(), {std::sqrt(0.5), 0.0}, 1.0), h,
                           2.0 * oracle::kPi, 4096);

  const auto same = boost_trajectory(traj, {.velocity = 0.0});
  for (std::size_t k = 0; k < traj.size(); ++k) CHECK(max_diff(same[k], traj[k]) == 0.0);
  CHECK(same.hamiltonian() == nullptr);

  const auto boosted = boost_trajectory(traj, {.velocity = 0.5});
  CHECK(cyclicity_defect(traj) < 1e-5);
  CHECK(cyclicity_defect(boosted) > 1e-4);

  SUBCASE("boost by v then -v restores the AW phase") {
    const auto back = boost_trajectory(boosted, {.velocity = -0.5});
    CHECK(std::abs(wrap_phase(aw_phase(back) - aw_phase(traj))) < 1e-8);
    for (std::size_t k = 0; k < traj.size(); k += 37) {
      CHECK(std::abs(std::abs(inner_product(back[k], traj[k])) - 1.0) < 1e-12);
    }
  }
  SUBCASE("overflow names the sample time") {
    try {
      boost_trajectory(traj, {.velocity = 6.0});
      FAIL("expected a domain overflow");
    } catch (const DomainOverflowError& e) {
      CHECK(std::string(e.what()).find("t = ") != std::string::npos);
    }
  }
}
