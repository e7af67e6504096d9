from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauberian_lab.asymptotics import (
    AsymptoticExpansion,
    AsymptoticTerm,
    Remainder,
    SingularPart,
    expansion_to_json,
    laplace_of_term,
    singular_part_from_json,
    singular_part_to_json,
    transfer_expansion,
    wiener_ikehara_mainterm,
)
from tauberian_lab.specfun import gamma, recip_gamma_derivs

EULER_GAMMA = 0.5772156649015329


def canonical_terms(e: AsymptoticExpansion):
    """Comparable multiset of (coeff, beta, logpow, freq, rate)."""
    return sorted(
        ((complex(t.coeff), t.beta, t.logpow, t.freq, t.rate) for t in e.terms),
        key=lambda row: (row[1], row[2], row[3], row[4], row[0].real, row[0].imag),
    )


# ----------------------------------------------------------------------
# transfer map, term by term
# ----------------------------------------------------------------------

def test_linear_pole_gives_ramp():
    e = transfer_expansion(SingularPart(linear_pole_a=2.5))
    assert canonical_terms(e) == [(2.5 + 0j, 1.0, 0, 0.0, 0.0)]
    assert e.dropped == ()


def test_simple_pole_gives_tone():
    e = transfer_expansion(SingularPart(simple_poles=((1.0 + 0.5j, 2.0),)))
    assert canonical_terms(e) == [((1.0 + 0.5j), 0.0, 0, 2.0, 0.0)]


def test_power_term_divides_by_gamma():
    beta = 0.5
    e = transfer_expansion(
        SingularPart(powerlog_terms=((gamma(beta + 1.0), 0.0, beta, 1),)))
    assert canonical_terms(e) == [(1.0 + 0j, beta, 0, 0.0, 0.0)]


def test_log_term_expands_with_recip_gamma_derivatives():
    # (0 + 1 * log(1/s)) / s  ->  log x + EulerGamma, the classical pair.
    e = transfer_expansion(SingularPart(powerlog_terms=((0.0, 1.0, 0.0, 1),)))
    got = {(t.beta, t.logpow): complex(t.coeff) for t in e.terms}
    assert set(got) == {(0.0, 1), (0.0, 0)}
    assert got[(0.0, 1)] == pytest.approx(1.0)
    assert got[(0.0, 0)] == pytest.approx(EULER_GAMMA)


def test_log_square_term_uses_binomial_weights():
    beta, k, d = 0.5, 2, 1.5
    e = transfer_expansion(SingularPart(powerlog_terms=((0.0, d, beta, k),)))
    derivs = recip_gamma_derivs(beta + 1.0, k).values
    got = {t.logpow: complex(t.coeff) for t in e.terms}
    for j in range(k + 1):
        assert got[k - j] == pytest.approx(d * math.comb(k, j) * derivs[j])


def test_negative_beta_dropped_with_message():
    e = transfer_expansion(SingularPart(powerlog_terms=((1.0, 0.0, -0.5, 1),)))
    assert e.terms == ()
    assert len(e.dropped) == 1
    assert "beta = -0.5" in e.dropped[0]


def test_bare_constant_absorbed_under_big_o1():
    sp = SingularPart(powerlog_terms=((3.0, 0.0, 0.0, 1),))
    little = transfer_expansion(sp, remainder=Remainder.LITTLE_O1)
    ((coeff, beta, logpow, freq, rate),) = canonical_terms(little)
    assert coeff == pytest.approx(3.0)
    assert (beta, logpow, freq, rate) == (0.0, 0, 0.0, 0.0)
    big = transfer_expansion(sp, remainder=Remainder.BIG_O1)
    assert big.terms == ()
    assert any("absorbed" in msg for msg in big.dropped)


def test_double_poles_reported_not_transferred():
    sp = SingularPart(linear_pole_a=1.0,
                      double_poles=((0.25, 1.0), (0.25, -1.0)))
    e = transfer_expansion(sp)
    assert canonical_terms(e) == [(1.0 + 0j, 1.0, 0, 0.0, 0.0)]
    assert len(e.dropped) == 2
    assert all("non-transfer singular data" in msg for msg in e.dropped)
    assert "x e^(1.0ix)" in e.dropped[0] or "x e^(1.0ix)" in e.dropped[1]


def test_wi_block_defers_to_its_own_mainterm():
    e = transfer_expansion(SingularPart(wi_alpha=1.0, wi_r0=1.0))
    assert e.terms == ()
    assert any("wiener_ikehara_mainterm" in msg for msg in e.dropped)


def test_transfer_is_additive_over_merge():
    sp1 = SingularPart(linear_pole_a=1.0, simple_poles=((2.0, 1.0),))
    sp2 = SingularPart(powerlog_terms=((1.0, 0.5, 0.5, 1),))
    merged = sp1.merged_with(sp2)
    joint = canonical_terms(transfer_expansion(merged))
    split = sorted(canonical_terms(transfer_expansion(sp1))
                   + canonical_terms(transfer_expansion(sp2)),
                   key=lambda row: (row[1], row[2], row[3], row[4],
                                    row[0].real, row[0].imag))
    assert len(joint) == len(split)
    for a, b in zip(joint, split):
        assert a[1:] == b[1:]
        assert a[0] == pytest.approx(b[0])


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------

def test_evaluate_matches_direct_formula():
    sp = SingularPart(linear_pole_a=2.0, simple_poles=((1.0, 3.0),),
                      powerlog_terms=((0.0, 1.0, 0.0, 1),))
    e = transfer_expansion(sp)
    x = np.linspace(1.5, 40.0, 400)
    expected = 2.0 * x + np.exp(3j * x) + np.log(x) + EULER_GAMMA
    assert np.max(np.abs(e.evaluate(x) - expected)) <= 1e-10 * np.max(np.abs(expected))


def test_evaluate_log_plus_clamps_below_one():
    e = transfer_expansion(SingularPart(powerlog_terms=((0.0, 1.0, 0.0, 1),)))
    x = np.array([0.0, 0.5, 1.0, np.e])
    vals = e.evaluate(x, log_plus=True)
    assert vals[0] == pytest.approx(EULER_GAMMA)
    assert vals[1] == pytest.approx(EULER_GAMMA)
    assert vals[3] == pytest.approx(1.0 + EULER_GAMMA)


def test_conjugate_pole_pairs_evaluate_real():
    sp = SingularPart(simple_poles=(((0.5 - 0.25j), 2.0), ((0.5 + 0.25j), -2.0)))
    vals = transfer_expansion(sp).evaluate(np.linspace(0.0, 20.0, 200))
    assert np.max(np.abs(vals.imag)) <= 1e-12


# ----------------------------------------------------------------------
# density main term
# ----------------------------------------------------------------------

def test_wi_mainterm_matches_cosine_form():
    alpha, r0, r, th, t = 1.0, 2.0, 0.5, 0.3, 4.0
    sp = SingularPart(wi_alpha=alpha, wi_r0=r0, wi_pairs=((r, th, t),))
    e = wiener_ikehara_mainterm(sp)
    assert all(term.rate == alpha for term in e.terms)
    x = np.linspace(0.0, 8.0, 161)
    scaled = sum(complex(term.coeff) * np.exp(1j * term.freq * x)
                 for term in e.terms)
    expected = r0 / alpha + 2.0 * r * np.cos(
        t * x + th - math.atan2(t, alpha)) / math.hypot(alpha, t)
    assert np.max(np.abs(scaled - expected)) <= 1e-12


def test_wi_mainterm_requires_wi_block():
    with pytest.raises(ValueError):
        wiener_ikehara_mainterm(SingularPart(linear_pole_a=1.0))


# ----------------------------------------------------------------------
# serialisation
# ----------------------------------------------------------------------

finite = st.floats(-10.0, 10.0, allow_nan=False)


@st.composite
def singular_parts(draw):
    n_poles = draw(st.integers(0, 2))
    freqs = draw(st.lists(st.floats(-5.0, 5.0), min_size=n_poles,
                          max_size=n_poles, unique=True))
    poles = tuple(
        (complex(draw(finite), draw(finite)), t) for t in freqs
    )
    n_pl = draw(st.integers(0, 2))
    powerlog = tuple(
        (complex(draw(finite), draw(finite)), complex(draw(finite), draw(finite)),
         draw(st.floats(-0.9, 0.9)), draw(st.integers(1, 3)))
        for _ in range(n_pl)
    )
    return SingularPart(linear_pole_a=complex(draw(finite), draw(finite)),
                        simple_poles=poles, powerlog_terms=powerlog)


@given(sp=singular_parts())
@settings(max_examples=60, deadline=None)
def test_singular_part_json_round_trip(sp):
    data = singular_part_to_json(sp)
    back = singular_part_from_json(data)
    assert back == sp
    assert singular_part_to_json(back) == data


def test_singular_part_json_rejects_unknown_keys():
    with pytest.raises(ValueError):
        singular_part_from_json({"cubic_poles": []})


def test_expansion_json_shape():
    sp = SingularPart(linear_pole_a=1.0, double_poles=((0.25, 1.0),))
    e = transfer_expansion(sp)
    doc = expansion_to_json(e)
    assert doc["remainder"] == "LittleO1"
    assert len(doc["terms"]) == 1
    assert doc["terms"][0]["beta"] == 1.0
    assert len(doc["dropped"]) == 1


def test_wi_alpha_must_be_positive():
    with pytest.raises(ValueError):
        SingularPart(wi_alpha=-1.0)


def test_gallery_terms_round_trip_through_their_transforms(gallery):
    """Transfer each gallery singular part, send every emitted term back
    through laplace_of_term, and compare the merged fragments against
    the transferable input shapes.  Compared as transform values at
    off-axis points: the bare-constant mass may legitimately sit in
    either the power-log c slot or the t = 0 pole, so raw coefficient
    tuples are not unique."""
    probe_s = (0.3 + 0.0j, 0.2 + 0.7j, 1.5 - 0.4j, 0.05 + 2.0j)
    for name in sorted(gallery):
        sp = gallery[name].singular_part
        if sp is None or sp.wi_alpha is not None:
            continue
        # double poles never transfer; drop them from the reference
        reference = SingularPart(
            linear_pole_a=sp.linear_pole_a,
            simple_poles=sp.simple_poles,
            powerlog_terms=tuple(t for t in sp.powerlog_terms if t[2] >= 0.0),
        )
        merged = SingularPart()
        for term in transfer_expansion(sp).terms:
            fragment = laplace_of_term(term)
            if term.logpow > 0:
                assert fragment.modulo_entire
            merged = merged.merged_with(fragment.part)
        for s in probe_s:
            lhs = merged.transform_value(s)
            rhs = reference.transform_value(s)
            assert lhs == pytest.approx(rhs, abs=1e-12 * (1.0 + abs(rhs))), name
