#include <cmath>

#include "doctest.h"
#include "geomphase/errors.hpp"
#include "geomphase/invariance.hpp"
#include "geomphase/states.hpp"
#include "oracles.hpp"

using namespace geomphase;

namespace {

constexpr double kTwoPi = 2.0 * oracle::kPi;

const Trajectory& sho_period() {
  static const Trajectory traj = [] {
    auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::harmonic(1.0));
    return evolve(coherent_state(make_grid(256, -16.0, 0.125), {std::sqrt(0.5), 0.0}, 1.0), h, kTwoPi,
                  4096);
  }();
  return traj;
}

const Trajectory& free_drift() {
  static const Trajectory traj = [] {
    auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::free());
    return evolve(gaussian_state(make_grid(1024, -40.0, 0.078125), 0.0, 1.0, 1.0), h, 2.0, 8192);
  }();
  return traj;
}

}  // namespace

TEST_CASE("predicted factor") {
  CHECK(predicted_boost_factor(free_drift(), {.velocity = 0.0}) == cplx(1.0, 0.0));

  SUBCASE("plane wave") {
    const auto g = make_grid(128, -8.0, 0.125);
    const double p0 = g->momentum(3);
    auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::free());
    InvarianceOptions opts;
    opts.guard = GuardBand::disabled();
    EvolveOptions evolve_opts;
    evolve_opts.guard = GuardBand::disabled();
    const auto traj = evolve(plane_wave(g, p0), h, 1.2, 240, evolve_opts);
    const BoostParams b{.velocity = g->dp()};
    // Translation ratio e^{i v p0 T} cancels against e^{-i v p0 T}.
    const cplx factor = predicted_boost_factor(traj, b, opts);
    CHECK(std::abs(factor - 1.0) < 1e-9);
    const auto report = verify_transformation_law(traj, b, opts);
    CHECK(report.residual_eq8 < 1e-9);
    CHECK(std::abs(report.overlap_ratio_factor - std::polar(1.0, b.velocity * p0 * 1.2)) < 1e-9);
  }

  SUBCASE("coherent state") {
    const BoostParams b{.velocity = 0.5};
    const auto& traj = sho_period();
    const cplx direct = std::polar(1.0, aw_phase(boost_trajectory(traj, b)) - aw_phase(traj));
    CHECK(std::abs(predicted_boost_factor(traj, b) - direct) < 1e-6);
  }
}

TEST_CASE("transformation law") {
  SUBCASE("v = 0") {
    const auto r = verify_transformation_law(free_drift(), {.velocity = 0.0});
    CHECK(r.residual_eq8 < 1e-12);
    CHECK(r.non_invariance_gap == 0.0);
  }
  SUBCASE("free Gaussian, v = 1") {
    const auto r = verify_transformation_law(free_drift(), {.velocity = 1.0});
    CHECK(r.residual_eq8 < 1e-6);
    CHECK(r.non_invariance_gap > 0.01);
    CHECK(r.momentum_integral == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.endpoint_q_term == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.warnings.empty());
  }
  SUBCASE("cyclic SHO, v = 0.5") {
    const BoostParams b{.velocity = 0.5};
    const auto r = verify_transformation_law(sho_period(), b);
    CHECK(r.residual_eq8 < 1e-6);
    CHECK(r.lab_cyclicity_defect < 1e-5);
    CHECK(r.boosted_cyclicity_defect > 0.1);
    const auto boosted = boost_trajectory(sho_period(), b);
    CHECK_THROWS_AS(aa_phase(boosted), NotCyclicError);
    CHECK_NOTHROW(aw_phase(boosted));
    REQUIRE(r.residual_eq10.has_value());
    CHECK(*r.residual_eq10 <= r.residual_eq8 + 1e-6);
  }
  SUBCASE("orthogonal endpoints") {
    const auto g = make_grid(512, -32.0, 0.125);
    auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::free());
    const auto runaway = evolve(gaussian_state(g, -10.0, 1.0, 8.0), h, 2.0, 3000, {.sample_every = 5});
    CHECK_THROWS_AS(verify_transformation_law(runaway, {.velocity = 0.5}), OrthogonalStatesError);
  }
}

TEST_CASE("Ehrenfest decomposition") {
  CHECK(ehrenfest_decomposition(free_drift()).max_abs < 1e-6);
  CHECK(ehrenfest_decomposition(sho_period()).max_abs < 1e-4);

  auto h = std::make_shared<HamiltonianSpec>(HamiltonianSpec::free().with_constant_vector_potential(0.5));
  const auto traj = evolve(gaussian_state(make_grid(1024, -40.0, 0.078125), 0.0, 1.0, 1.0), h, 2.0, 8192,
                           {.sample_every = 2});
  const auto profile = ehrenfest_decomposition(traj);
  CHECK(profile.max_abs < 1e-6);
  CHECK(profile.times.size() == traj.size() - 2);
  // d<Q>/dt = (<P> - a0) / m
  CHECK(expect_position(traj.back()) == doctest::Approx(1.0).epsilon(1e-9));

  const Trajectory two = slice(traj, 0, 1);
  CHECK_THROWS_AS(ehrenfest_decomposition(Trajectory(two.states())), std::invalid_argument);
  CHECK_THROWS_AS(ehrenfest_decomposition(two), ResolutionError);
}

TEST_CASE("gauge-split law") {
  const auto sho = verify_gauge_split_law(sho_period(), {.velocity = 0.5});
  CHECK(sho.lab_cyclic);
  REQUIRE(sho.cyclic_endpoint_deviation.has_value());
  CHECK(*sho.cyclic_endpoint_deviation < 1e-6);
  CHECK(sho.residual < 1e-5);

  const auto drift = verify_gauge_split_law(free_drift(), {.velocity = 1.0});
  CHECK_FALSE(drift.lab_cyclic);
  CHECK(std::abs(drift.endpoint_factor - 1.0) > 0.1);
  CHECK(drift.residual < 1e-5);

  CHECK(verify_gauge_split_law(free_drift(), {.velocity = 0.0}).residual < 1e-12);
}

TEST_CASE("cyclic special case") {
  const auto r = verify_cyclic_special_case(sho_period(), {.velocity = 0.5});
  REQUIRE(r.has_value());
  CHECK(r->residual < 1e-5);
  CHECK(r->displacement_mismatch < 1e-10);

  const auto zero = verify_cyclic_special_case(sho_period(), {.velocity = 0.0});
  REQUIRE(zero.has_value());
  CHECK(zero->residual < 1e-12);

  CHECK_FALSE(verify_cyclic_special_case(free_drift(), {.velocity = 0.5}).has_value());

  const auto& traj = sho_period();
  const auto psiT = traj[traj.size() / 3];
  const cplx slow = overlap_ratio_factor(traj.front(), psiT, 0.5 * 2.0);
  const cplx fast = overlap_ratio_factor(traj.front(), psiT, 2.0 * 0.5);
  CHECK(std::abs(slow - fast) < 1e-10);
}
