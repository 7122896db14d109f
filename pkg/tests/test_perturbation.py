"""Exact-arithmetic expansion tests.

The coefficient values through order 4 are closed forms and are compared
exactly, term by term, as rationals in pi^2.  Orders 5 and 6 have no short
closed form, so their float values are frozen from the exact tables.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from driftspec.perturbation import (
    MAX_ORDER,
    OrderExceeded,
    PiPoly,
    PP_ONE,
    PP_ZERO,
    ansatz_term,
    ansatz_term_second_derivative,
    ansatz_value,
    compute_expansion,
    evaluate_series,
    perturbation_coefficients,
    pipoly,
)

EXACT = [
    pipoly({0: 1}),
    pipoly({1: "1/12", 0: "-1/2"}),
    pipoly({2: "1/720", 1: "-5/48", 0: "7/8"}),
    pipoly({3: "1/30240", 2: "-1/48", 1: "31/32", 0: "-121/16"}),
    pipoly({4: "1/362880", 3: "-1/270", 2: "683/1280", 1: "-14573/768", 0: "17771/128"}),
]

PRETTY = [
    "1",
    "pi^2/12 - 1/2",
    "pi^4/720 - 5*pi^2/48 + 7/8",
    "pi^6/30240 - pi^4/48 + 31*pi^2/32 - 121/16",
    "pi^8/362880 - pi^6/270 + 683*pi^4/1280 - 14573*pi^2/768 + 17771/128",
]


def test_exact_coefficients_through_order_four():
    got = perturbation_coefficients(4)
    assert got == EXACT


def test_pretty_forms():
    assert [c.pretty() for c in perturbation_coefficients(4)] == PRETTY


def test_higher_orders_frozen_floats():
    c = perturbation_coefficients(6)
    assert c[5].evalf() == pytest.approx(-4.863332366544793e-07, rel=1e-12)
    assert c[6].evalf() == pytest.approx(3.084092584509923e-07, rel=1e-12)


def test_expansion_is_cached_and_capped():
    assert compute_expansion(4) is compute_expansion(4)
    assert MAX_ORDER == 8
    with pytest.raises(OrderExceeded):
        compute_expansion(MAX_ORDER + 1)
    with pytest.raises(OrderExceeded):
        evaluate_series("weber_pi", MAX_ORDER + 1, b=0.1)


def test_ansatz_boundary_and_parity():
    state = compute_expansion(5)
    edge = np.array([math.pi / 2.0])
    for b in (0.05, 0.3):
        assert abs(float(ansatz_value(state, b, edge)[0])) < 1e-13
    s = np.linspace(0.1, 1.4, 7)
    for k in range(1, 5):
        assert np.max(np.abs(ansatz_term(state, k, s) - ansatz_term(state, k, -s))) < 1e-15


def test_ansatz_second_derivative_matches_finite_difference():
    state = compute_expansion(3)
    s = np.linspace(-1.2, 1.2, 9)
    h = 1e-4
    for k in range(0, 4):
        fd = (ansatz_term(state, k, s + h) - 2.0 * ansatz_term(state, k, s)
              + ansatz_term(state, k, s - h)) / (h * h)
        exact = ansatz_term_second_derivative(state, k, s)
        assert np.max(np.abs(fd - exact)) < 1e-5
    with pytest.raises(OrderExceeded):
        ansatz_term_second_derivative(state, 4, s)


def test_evaluate_series_targets_are_consistent():
    a = 1.0
    assert evaluate_series("weber_pi", 4, b=0.0) == pytest.approx(1.0, abs=0.0)
    assert evaluate_series("drift_pi", 4, a=a) == pytest.approx(
        0.5 * a + evaluate_series("weber_pi", 4, b=a * a / 4.0), abs=1e-15)
    assert evaluate_series("drift_general", 4, a=a, D=math.pi) == pytest.approx(
        evaluate_series("drift_pi", 4, a=a), rel=1e-14)
    # the order-0 term of the general form is the pure interval eigenvalue
    assert evaluate_series("drift_general", 0, a=3.0, D=2.0) == pytest.approx(
        1.5 + (math.pi / 2.0) ** 2, rel=1e-14)


def test_evaluate_series_argument_errors():
    with pytest.raises(ValueError):
        evaluate_series("nonsense", 2, b=0.1)
    with pytest.raises(ValueError):
        evaluate_series("weber_pi", 2)
    with pytest.raises(ValueError):
        evaluate_series("drift_general", 2, a=1.0)


def test_pipoly_normalizes_zeros():
    assert pipoly({0: 0, 1: "1/2"}).terms == ((1, Fraction(1, 2)),)
    assert pipoly({2: 0}) == PP_ZERO
    assert PP_ONE.evalf() == 1.0


coeffs = st.dictionaries(st.integers(min_value=0, max_value=4),
                         st.fractions(min_value=-5, max_value=5, max_denominator=12),
                         max_size=4)


@settings(max_examples=120, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_pipoly_ring_laws(da, db, dc):
    p, q, r = pipoly(da), pipoly(db), pipoly(dc)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p - p == PP_ZERO
    assert p * PP_ONE == p
    assert (p + q).evalf() == pytest.approx(p.evalf() + q.evalf(), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(coeffs)
def test_pipoly_pretty_round_trips_sign(da):
    p = pipoly(da)
    text = p.pretty()
    assert isinstance(text, str) and text
    if p == PP_ZERO:
        assert text == "0"
