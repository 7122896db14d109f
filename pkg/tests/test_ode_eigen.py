"""Solver-level tests on problems with known eigenvalues."""

import math

import numpy as np
import pytest

from driftspec.ode_eigen import (
    BracketEmpty,
    DegenerateWeight,
    GridTooCoarse,
    Parity,
    SLProblem,
    fd_eigenvalue,
    fd_eigenvalue_with_error,
    fd_oracle_eigenvalue,
    interior_sign_changes,
    reduced_interval,
    scan_bracket,
    shoot_eigenvalue,
)


def _ones(s):
    return np.ones_like(np.asarray(s, dtype=float))


def _zeros(s):
    return np.zeros_like(np.asarray(s, dtype=float))


def laplacian(parity, interval):
    return SLProblem(drift=_zeros, potential=_zeros, weight=_ones,
                     interval=interval, parity=parity, name="laplacian")


QUARTER_PI_SQ = math.pi ** 2 / 4.0


@pytest.mark.parametrize("parity,interval", [
    (Parity.ODD_NEUMANN, (-1.0, 1.0)),
    (Parity.EVEN_DIRICHLET, (-1.0, 1.0)),
    (Parity.GENERAL, (0.0, 2.0)),
])
def test_laplacian_first_eigenvalue(parity, interval):
    # all three routes see an effective half-interval of length 1 here, so
    # the eigenvalue is pi^2/4 in each parity class
    sol = shoot_eigenvalue(laplacian(parity, interval), (1.0, 5.0))
    assert abs(sol.eigenvalue - QUARTER_PI_SQ) < 1e-10
    assert interior_sign_changes(sol) == 0
    assert sol.residual < 1e-8
    assert abs(fd_eigenvalue_with_error(laplacian(parity, interval))[0]
               - QUARTER_PI_SQ) < 1e-7


def test_reduced_interval():
    lo, hi = reduced_interval(laplacian(Parity.ODD_NEUMANN, (-1.0, 1.0)))
    assert (lo, hi) == (0.0, 1.0)
    lo, hi = reduced_interval(laplacian(Parity.GENERAL, (0.0, 2.0)))
    assert (lo, hi) == (0.0, 2.0)


def test_harmonic_oscillator_ground_state():
    # u'' + (lam - s^2) u = 0 on a wide interval: ground state lam = 1,
    # exponentially small truncation error at |s| = 8
    prob = SLProblem(drift=_zeros,
                     potential=lambda s: np.asarray(s, dtype=float) ** 2,
                     weight=_ones, interval=(-8.0, 8.0),
                     parity=Parity.EVEN_DIRICHLET, name="oscillator")
    sol = shoot_eigenvalue(prob, (0.5, 2.5))
    assert abs(sol.eigenvalue - 1.0) < 1e-8
    assert fd_oracle_eigenvalue(prob) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("k,expected", [(1, 2.0), (2, 3.0)])
def test_singular_pole_sphere_weights(k, expected):
    # weight sin(s)^k on [0, pi] reproduces the round-sphere first nonzero
    # eigenvalue k + 1 with an eigenfunction regular at both poles
    prob = SLProblem(
        drift=lambda s: -k * np.cos(np.asarray(s, dtype=float)) / np.sin(np.asarray(s, dtype=float)),
        potential=_zeros,
        weight=lambda s: np.sin(np.asarray(s, dtype=float)) ** k,
        interval=(0.0, math.pi), parity=Parity.ODD_NEUMANN,
        singular_endpoints=(True, True), name=f"sphere weight k={k}")
    sol = shoot_eigenvalue(prob, (expected - 1.0, expected + 1.0))
    assert abs(sol.eigenvalue - expected) < 1e-9
    assert interior_sign_changes(sol) == 0
    assert fd_oracle_eigenvalue(prob) == pytest.approx(expected, abs=1e-6)


def test_eigen_solution_samples_are_readonly_and_ascending():
    sol = shoot_eigenvalue(laplacian(Parity.ODD_NEUMANN, (-1.0, 1.0)), (1.0, 5.0))
    assert sol.samples.shape[1] == 3
    assert np.all(np.diff(sol.s) > 0)
    with pytest.raises(ValueError):
        sol.samples[0, 0] = 42.0


def test_fd_second_order_convergence():
    prob = laplacian(Parity.GENERAL, (0.0, 2.0))
    l1 = fd_eigenvalue(prob, 128)
    l2 = fd_eigenvalue(prob, 256)
    l3 = fd_eigenvalue(prob, 512)
    order = math.log2(abs(l1 - l2) / abs(l2 - l3))
    assert 1.9 < order < 2.1


def test_scan_bracket_finds_first_eigenvalue():
    prob = laplacian(Parity.GENERAL, (0.0, 2.0))
    lo, hi = scan_bracket(prob, 0.5, 6.0, num=32)
    assert lo <= QUARTER_PI_SQ <= hi
    with pytest.raises(BracketEmpty):
        scan_bracket(prob, 50.0, 60.0, num=16)


def test_bracket_without_sign_change_raises():
    with pytest.raises(BracketEmpty):
        shoot_eigenvalue(laplacian(Parity.GENERAL, (0.0, 2.0)), (100.0, 120.0))


def test_unresolved_spike_raises_grid_too_coarse():
    spike = SLProblem(
        drift=_zeros,
        potential=lambda s: 4000.0 * np.exp(-((np.asarray(s, dtype=float) - 0.371) / 0.002) ** 2),
        weight=_ones, interval=(0.0, 1.0), parity=Parity.GENERAL, name="spike")
    with pytest.raises(GridTooCoarse):
        fd_eigenvalue_with_error(spike, 64, 3)


def test_sign_changing_weight_raises():
    prob = SLProblem(drift=_zeros, potential=_zeros,
                     weight=lambda s: np.cos(3.0 * np.asarray(s, dtype=float)),
                     interval=(0.0, 2.0), parity=Parity.GENERAL, name="signflip")
    with pytest.raises(DegenerateWeight):
        fd_eigenvalue(prob, 64)


def test_invalid_construction_and_arguments():
    with pytest.raises(ValueError):
        SLProblem(drift=_zeros, potential=_zeros, weight=_ones,
                  interval=(1.0, 1.0), parity=Parity.GENERAL)
    with pytest.raises(ValueError):
        # a Dirichlet condition cannot sit on the singular endpoint
        SLProblem(drift=_zeros, potential=_zeros, weight=_ones,
                  interval=(-1.0, 1.0), parity=Parity.EVEN_DIRICHLET,
                  singular_endpoints=(False, True))
    prob = laplacian(Parity.GENERAL, (0.0, 2.0))
    with pytest.raises(ValueError):
        fd_eigenvalue_with_error(prob, 8)
    with pytest.raises(ValueError):
        fd_eigenvalue_with_error(prob, 256, 0)


def test_cross_method_agreement_mixed_problem():
    # drift and potential together, no symmetry assumed by the oracle
    prob = SLProblem(
        drift=lambda s: 0.7 * np.asarray(s, dtype=float),
        potential=lambda s: 0.3 * np.asarray(s, dtype=float) ** 2,
        weight=lambda s: np.exp(-0.35 * np.asarray(s, dtype=float) ** 2),
        interval=(-1.5, 1.5), parity=Parity.ODD_NEUMANN, name="mixed")
    sol = shoot_eigenvalue(prob, (0.5, 8.0))
    assert abs(sol.eigenvalue - fd_oracle_eigenvalue(prob)) < 1e-6
