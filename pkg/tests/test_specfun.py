from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauberian_lab.specfun import gamma, polygamma, recip_gamma_derivs

EULER_GAMMA = 0.5772156649015329


# ----------------------------------------------------------------------
# gamma
# ----------------------------------------------------------------------

@pytest.mark.parametrize("y, expected", [
    (0.5, math.sqrt(math.pi)),
    (1.0, 1.0),
    (2.0, 1.0),
    (5.0, 24.0),
    (1.5, math.sqrt(math.pi) / 2.0),
    (10.0, 362880.0),
])
def test_gamma_known_values(y, expected):
    assert gamma(y) == pytest.approx(expected, rel=1e-13)


def test_gamma_large_argument_stays_finite_and_accurate():
    mp.mp.dps = 40
    for y in (50.0, 120.3, 165.7, 170.0):
        ref = float(mp.gamma(y))
        assert math.isfinite(gamma(y))
        assert gamma(y) == pytest.approx(ref, rel=1e-12)


def test_gamma_rejects_nonpositive():
    for y in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            gamma(y)


@given(y=st.floats(0.05, 84.0))
@settings(max_examples=80, deadline=None)
def test_gamma_functional_equation(y):
    assert gamma(y + 1.0) == pytest.approx(y * gamma(y), rel=1e-12)


# ----------------------------------------------------------------------
# polygamma
# ----------------------------------------------------------------------

@pytest.mark.parametrize("m, y, expected", [
    (0, 1.0, -EULER_GAMMA),
    (0, 0.5, -EULER_GAMMA - 2.0 * math.log(2.0)),
    (0, 2.0, 1.0 - EULER_GAMMA),
    (1, 1.0, math.pi**2 / 6.0),
    (1, 0.5, math.pi**2 / 2.0),
    (2, 1.0, -2.4041138063191885),  # -2 zeta(3)
])
def test_polygamma_closed_forms(m, y, expected):
    assert polygamma(m, y) == pytest.approx(expected, rel=1e-12)


@given(y=st.floats(0.1, 60.0), m=st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_polygamma_recurrence(y, m):
    # psi_m(y + 1) = psi_m(y) + (-1)^m m! / y^(m+1).  Near y = 0 the two
    # right-hand terms cancel catastrophically, so the tolerance scales
    # with their common magnitude, not with the small difference.
    step = math.factorial(m) / y ** (m + 1)
    lhs = polygamma(m, y + 1.0)
    rhs = polygamma(m, y) + (-1.0) ** m * step
    tol = 1e-12 * (abs(polygamma(m, y)) + step) + 1e-10 * abs(lhs)
    assert abs(lhs - rhs) <= tol


def test_polygamma_against_mpmath():
    mp.mp.dps = 30
    for m in range(0, 9):
        for y in (0.25, 1.0, 3.7, 25.0):
            ref = float(mp.polygamma(m, y))
            assert polygamma(m, y) == pytest.approx(ref, rel=1e-11)


# ----------------------------------------------------------------------
# reciprocal-gamma derivatives
# ----------------------------------------------------------------------

def test_recip_gamma_value_inverts_gamma():
    for omega in (0.25, 0.7, 1.0, 2.5, 6.0):
        d = recip_gamma_derivs(omega, 0)
        assert d.values[0] * gamma(omega) == pytest.approx(1.0, rel=1e-12)


def test_recip_gamma_first_derivative_at_one_is_euler_gamma():
    d = recip_gamma_derivs(1.0, 1)
    assert d.values[1] == pytest.approx(EULER_GAMMA, rel=1e-12)


@pytest.mark.parametrize("omega", [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5])
def test_recip_gamma_against_live_mpmath_oracle(omega):
    """Independent high-precision finite differences, not the recurrence."""
    mp.mp.dps = 50
    got = recip_gamma_derivs(omega, 6).values
    for j in range(7):
        ref = float(mp.diff(lambda y: 1 / mp.gamma(y), mp.mpf(omega), j))
        assert got[j] == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_recip_gamma_extension_is_stable():
    short = recip_gamma_derivs(1.7, 3).values
    long = recip_gamma_derivs(1.7, 8).values
    assert long[: len(short)] == pytest.approx(short, rel=1e-14)


def test_recip_gamma_rejects_bad_arguments():
    with pytest.raises(ValueError):
        recip_gamma_derivs(0.0, 2)
    with pytest.raises(ValueError):
        recip_gamma_derivs(1.0, -1)


def test_recip_gamma_order_cap():
    with pytest.raises(ValueError):
        recip_gamma_derivs(1.0, 200)
