import cmath
import json
import math

import numpy as np
import pytest

import geomphase as gp


@pytest.fixture(scope="module")
def free_traj():
    grid = gp.Grid(1024, -40.0, 0.078125)
    psi0 = gp.gaussian_state(grid, 0.0, 1.0, 1.0)
    return gp.evolve(psi0, gp.Hamiltonian.free(), 2.0, 8192)


def test_state_basics():
    grid = gp.Grid(256, -16.0, 0.125)
    psi = gp.gaussian_state(grid, 2.0, 1.0, 1.5)
    assert abs(psi.norm() - 1.0) < 1e-12
    assert abs(gp.expect_position(psi) - 2.0) < 1e-8
    assert abs(gp.expect_momentum(psi) - 1.5) < 1e-8
    amps = psi.amplitudes
    assert amps.dtype == np.complex128 and amps.shape == (256,)
    back = gp.from_momentum(grid, gp.to_momentum(psi))
    assert np.max(np.abs(back.amplitudes - amps)) < 1e-12
    moved = gp.translate(psi, 0.5)
    assert abs(gp.expect_position(moved) - 1.5) < 1e-10


def test_errors_are_typed():
    grid = gp.Grid(256, -16.0, 0.125)
    psi = gp.gaussian_state(grid, 0.0, 1.0)
    with pytest.raises(gp.DomainOverflowError):
        gp.translate(psi, 15.0)
    with pytest.raises(gp.NormalizationError):
        gp.expect_position(psi.scaled(2.0))
    with pytest.raises(gp.GridMismatchError):
        gp.inner_product(psi, gp.gaussian_state(gp.Grid(128, -8.0, 0.125), 0.0, 1.0))
    assert issubclass(gp.NotCyclicError, gp.Error)


def test_transformation_law(free_traj):
    closed_form_aw = 0.607300918301275864
    assert abs(gp.aw_phase(free_traj) - closed_form_aw) < 1e-6
    report = gp.verify_transformation_law(free_traj, gp.BoostParams(1.0))
    assert report.residual_eq8 < 1e-6
    assert report.non_invariance_gap > 0.01
    lhs = cmath.exp(1j * report.gamma_aw_boosted)
    rhs = cmath.exp(1j * report.gamma_aw_lab) * report.predicted_factor
    assert abs(lhs - rhs) < 1e-6


def test_cyclic_oscillator():
    grid = gp.Grid(256, -16.0, 0.125)
    psi0 = gp.coherent_state(grid, math.sqrt(0.5), 1.0)
    traj = gp.evolve(psi0, gp.Hamiltonian.harmonic(1.0), 2 * math.pi, 4096)
    assert gp.cyclicity_defect(traj) < 1e-5
    assert abs(gp.wrap_phase(gp.aa_phase(traj) - math.pi)) < 5e-3
    boosted = gp.boost_trajectory(traj, gp.BoostParams(0.5))
    with pytest.raises(gp.NotCyclicError):
        gp.aa_phase(boosted)
    gp.aw_phase(boosted)


def test_run_scenario():
    text = """{
      "grid": {"n_points": 256, "x_min": -16.0, "dx": 0.125},
      "system": {"potential": {"kind": "harmonic", "omega": 1.0}},
      "initial_state": {"kind": "coherent", "alpha": 0.5, "omega": 1.0},
      "evolution": {"periods": 1, "n_steps": 1024},
      "boost": {"velocities": [0.3]},
      "checks": ["eq8", "eq11"]
    }"""
    report = json.loads(gp.run_scenario(text))
    assert report["all_passed"]
    with pytest.raises(gp.ConfigError):
        gp.run_scenario('{"grid": {"n_points": 4, "x_min": 0, "dx": 1}}')
