from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauberian_lab.asymptotics import SingularPart
from tauberian_lab.experiments import (
    CoefficientSequence,
    exceptional_set_audit,
    fejer_integral_table,
    finite_form_bound,
    finite_form_experiment,
    power_series_suite,
    transfer_soundness,
    wiener_ikehara_experiment,
)
from tauberian_lab.signal import SampledFunction, StieltjesFunction, Verdict


def _sampled(fn, xmax, dx):
    return SampledFunction.from_function(
        lambda x: np.asarray(fn(x), dtype=complex), grid_step=dx, xmax=xmax)


# ----------------------------------------------------------------------
# kernel window integrals
# ----------------------------------------------------------------------

def test_integral_table_values_and_identity():
    fejer_integral_table.cache_clear()
    t = fejer_integral_table()
    assert t.i1 == pytest.approx(2.690, abs=0.005)
    assert t.i2 == pytest.approx(0.452, abs=0.005)
    assert t.i3 == pytest.approx(1.170, abs=0.005)
    assert t.i4 == pytest.approx(0.905, abs=0.005)
    assert t.i4 == 2.0 * t.i2  # same quadrature doubled, exact
    assert all(0.0 < b < 1e-6 for b in t.error_bounds)


def test_integral_table_is_cached():
    assert fejer_integral_table() is fejer_integral_table()


def test_integral_table_against_brute_force():
    # independent check: integrate phi on [0, 400] with a different grid
    dx = 2e-4
    x = np.arange(0.0, 400.0 + dx / 2, dx)
    phi = np.sinc(x / (2.0 * np.pi)) ** 2
    from tauberian_lab.quadrature import simpson
    n4 = int(round(4.0 / dx))
    brute_i1 = simpson(phi[: n4 + 1], dx)
    t = fejer_integral_table()
    assert brute_i1 == pytest.approx(t.i1, abs=1e-8)


# ----------------------------------------------------------------------
# the finite form
# ----------------------------------------------------------------------

@given(M=st.floats(0.0, 100.0), lam=st.floats(0.01, 10.0))
@settings(max_examples=60, deadline=None)
def test_finite_form_bound_scales_literally(M, lam):
    assert finite_form_bound(M, lam) == M * finite_form_bound(1.0, 1.0) / lam


def test_finite_form_bound_validation():
    with pytest.raises(ValueError):
        finite_form_bound(1.0, 0.0)
    with pytest.raises(ValueError):
        finite_form_bound(-1.0, 1.0)


@pytest.mark.parametrize("freq, expected_dev", [(2.0, 0.5), (5.0, 0.2)])
def test_finite_form_on_a_single_tone(freq, expected_dev):
    # integral_0^x sin(freq u) du = (1 - cos(freq x))/freq, so the
    # deviation from rho_hat(0) = 1/freq is |cos(freq x)|/freq
    f = _sampled(lambda x: np.sin(freq * x), xmax=200.0, dx=0.001)
    r = finite_form_experiment(f, 1.0 / freq, 1.0)
    assert r.M == pytest.approx(1.0, abs=1e-6)
    assert r.bound == pytest.approx(2.0, abs=1e-6)
    assert r.measured_limsup == pytest.approx(expected_dev, abs=1e-6)
    assert r.empirical_ratio == pytest.approx(expected_dev, abs=1e-6)


@pytest.mark.parametrize("freq", [1.0, 2.0, 5.0])
@pytest.mark.parametrize("lam_factor", [0.5, 1.0])
def test_finite_form_inequality_on_conforming_tones(freq, lam_factor):
    # a tone conforms when its frequency clears the spectral gap lam
    lam = lam_factor * freq
    f = _sampled(lambda x: np.sin(freq * x), xmax=200.0, dx=0.001)
    r = finite_form_experiment(f, 1.0 / freq, lam)
    assert r.measured_limsup <= 1.05 * r.bound


def test_finite_form_zero_input_has_no_ratio():
    f = _sampled(lambda x: np.zeros_like(x), xmax=50.0, dx=0.01)
    r = finite_form_experiment(f, 0.0, 1.0)
    assert r.M == 0.0
    assert r.measured_limsup == 0.0
    assert r.empirical_ratio is None


def test_finite_form_rejects_growing_amplitude():
    f = _sampled(lambda x: x * np.sin(x), xmax=100.0, dx=0.01)
    with pytest.raises(ValueError, match="not tail-bounded"):
        finite_form_experiment(f, 0.0, 1.0)


# ----------------------------------------------------------------------
# transfer soundness
# ----------------------------------------------------------------------

def test_transfer_soundness_on_every_gallery_singular_part(gallery):
    # the whole sweep runs the frequency route eight times (~20 s)
    failures = []
    for name in sorted(gallery):
        sp = gallery[name].singular_part
        if sp is None:
            continue
        rep = transfer_soundness(sp, t0=0.0, bandwidth=0.4, dx=0.01)
        if rep.verdict is not Verdict.PSEUDOFUNCTION:
            failures.append(f"{name}: {rep.verdict.value}")
        assert rep.route == "frequency"
    assert not failures, "; ".join(failures)


def test_transfer_soundness_rejects_wi_blocks():
    sp = SingularPart(wi_alpha=1.0, wi_r0=1.0)
    with pytest.raises(ValueError, match="wi block"):
        transfer_soundness(sp)


def test_transfer_soundness_time_route_on_realizing_tau():
    # tau = x + 2 sin(x/2) realizes 1/s^2 - i/(s - i/2) + i/(s + i/2),
    # so the time-route residual is zero up to rounding
    tau = _sampled(lambda x: x + 2.0 * np.sin(0.5 * x), xmax=4000.0, dx=0.01)
    sp = SingularPart(linear_pole_a=1.0,
                      simple_poles=((-1j, 0.5), (1j, -0.5)))
    for t0 in (-0.5, 0.0, 0.5):
        rep = transfer_soundness(sp, t0=t0, bandwidth=0.5, tau=tau)
        assert rep.route == "time"
        assert rep.verdict is Verdict.PSEUDOFUNCTION
        assert max(rep.window_maxima) <= 1e-12
        assert rep.dropped == ()


# ----------------------------------------------------------------------
# exponentially weighted deviation harness
# ----------------------------------------------------------------------

def _wi_line_data():
    return SingularPart(wi_alpha=1.0, wi_r0=1.0)


def test_wi_deviation_vanishes_for_the_exact_density():
    dens = _sampled(np.exp, xmax=60.0, dx=0.005)
    S = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=dens)
    r = wiener_ikehara_experiment(S, _wi_line_data(), probe_freqs=(1.0,))
    assert r.alpha == 1.0
    assert r.deviation_verdict is Verdict.PSEUDOFUNCTION
    assert r.deviation_last <= 1e-10
    sups = r.deviation_window_sups
    assert all(b < a for a, b in zip(sups, sups[1:]))
    t, sup, expo, bounded = r.partial_integrals[0]
    assert t == 1.0
    assert bounded
    assert expo < 0.5


def test_wi_deviation_stays_bounded_for_lattice_jumps():
    """S with jumps e^n at the integers has the same first-order line
    data but extra poles at 2 pi i k; the deviation oscillates without
    decaying and the probe at t = 2 pi sees linearly growing partial
    integrals."""
    X = 60.0
    pts = tuple(float(n) for n in range(1, int(X)))
    masses = tuple(float(np.exp(n)) for n in range(1, int(X)))
    S = StieltjesFunction(jump_points=pts, jump_masses=masses)
    r = wiener_ikehara_experiment(S, _wi_line_data(),
                                  probe_freqs=(1.0, 2.0 * np.pi),
                                  grid_step=0.005, xmax=X)
    assert r.deviation_verdict is Verdict.PSEUDOMEASURE_ONLY
    assert 0.3 <= r.deviation_last <= 0.7
    assert all(0.5 <= s <= 0.7 for s in r.deviation_window_sups)
    probes = {round(t, 6): (expo, bounded)
              for t, _, expo, bounded in r.partial_integrals}
    assert probes[1.0][1]
    expo_2pi, bounded_2pi = probes[round(2.0 * np.pi, 6)]
    assert not bounded_2pi
    assert expo_2pi >= 0.9


def test_wi_deviation_of_nothing_is_zero():
    zero = _sampled(lambda x: np.zeros_like(x), xmax=60.0, dx=0.005)
    S = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=zero)
    r = wiener_ikehara_experiment(S, SingularPart(wi_alpha=1.0, wi_r0=0.0))
    assert r.deviation_verdict is Verdict.PSEUDOFUNCTION
    assert r.deviation_last == 0.0


def test_wi_experiment_input_validation():
    dens = _sampled(np.exp, xmax=30.0, dx=0.01)
    S = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=dens)
    with pytest.raises(ValueError):
        wiener_ikehara_experiment(S, SingularPart(linear_pole_a=1.0))
    neg = _sampled(lambda x: -np.ones_like(x), xmax=30.0, dx=0.01)
    S_neg = StieltjesFunction(jump_points=(), jump_masses=(), ac_part=neg)
    with pytest.raises(ValueError):
        wiener_ikehara_experiment(S_neg, _wi_line_data())


# ----------------------------------------------------------------------
# exceptional sets
# ----------------------------------------------------------------------

def test_exceptional_audit_log_compensation():
    # integral of e^(iu)/(1+u) against e^(-iu) grows like log x:
    # finite on every window, exponent well under the 0.5 screen
    f = _sampled(lambda x: np.exp(1j * x) / (1.0 + x), xmax=3000.0, dx=0.01)
    r = exceptional_set_audit(f, E=(1.0,), lam=0.5)
    p = r.points[0]
    assert p.M_t == pytest.approx(math.log(3001.0), rel=0.01)
    assert p.bounded
    assert r.hypothesis_II_ok
    assert p.verdict is Verdict.PSEUDOFUNCTION
    assert tuple(t for t, _ in r.probe_verdicts) == (-0.5, 2.5)
    assert all(v is Verdict.PSEUDOFUNCTION for _, v in r.probe_verdicts)
    assert r.conclusion_holds


def test_exceptional_audit_flags_uncompensated_tone():
    f = _sampled(lambda x: np.exp(1j * x), xmax=3000.0, dx=0.01)
    r = exceptional_set_audit(f, E=(1.0,), lam=0.5)
    p = r.points[0]
    assert not p.bounded
    assert p.growth_exponent == pytest.approx(1.0, abs=0.1)
    assert not r.hypothesis_II_ok


def test_exceptional_audit_of_zero():
    f = _sampled(lambda x: np.zeros_like(x), xmax=3000.0, dx=0.01)
    r = exceptional_set_audit(f, E=(0.0,), lam=0.5)
    assert r.points[0].M_t == 0.0
    assert r.hypothesis_II_ok
    assert r.conclusion_holds


# ----------------------------------------------------------------------
# power series boundary suite
# ----------------------------------------------------------------------

def _harmonic(N):
    return CoefficientSequence(coeffs=1.0 / (np.arange(N + 1) + 1.0)
                               .astype(complex))


def test_power_series_decaying_coefficients():
    rep = power_series_suite(_harmonic(4096))
    assert rep.coefficient_verdict is Verdict.PSEUDOFUNCTION
    m = rep.coefficient_window_maxima
    assert all(b <= 0.75 * a for a, b in zip(m, m[1:]))


def test_power_series_verdict_matches_direct_definition():
    n = np.arange(2049, dtype=float)
    cases = [
        (1.0 / (n + 1.0), Verdict.PSEUDOFUNCTION),
        (np.exp(-1.3j * n), Verdict.PSEUDOMEASURE_ONLY),
        (n + 1.0, Verdict.NEITHER),
        (np.zeros_like(n), Verdict.PSEUDOFUNCTION),
    ]
    for coeffs, expected in cases:
        rep = power_series_suite(CoefficientSequence(coeffs=coeffs.astype(complex)))
        assert rep.coefficient_verdict is expected


def test_power_series_alternating_abel_value():
    rep = power_series_suite(_harmonic(20000), E_angles=(np.pi,))
    theta, sup, expo, bounded = rep.partial_sums[0]
    assert bounded
    assert sup <= 1.0 + 1e-9  # alternating partial sums stay in (0, 1]
    theta_c, converged, abel = rep.convergence[0]
    assert converged
    assert complex(abel).real == pytest.approx(math.log(2.0), abs=1e-4)


def test_power_series_rotation_resonance():
    n = np.arange(20001, dtype=float)
    c = CoefficientSequence(coeffs=np.exp(-1.3j * n))
    rep = power_series_suite(c, E_angles=(1.3,))
    theta, sup, expo, bounded = rep.partial_sums[0]
    assert sup == pytest.approx(20001.0, rel=1e-12)
    assert expo >= 0.8
    assert not bounded
    assert not rep.convergence[0][1]


def test_power_series_radial_samples():
    rep = power_series_suite(_harmonic(20000), theta_probes=(0.0,))
    theta, samples = rep.radial[0]
    assert theta == 0.0
    assert len(samples) == 10
    rs = [r for r, _ in samples]
    vals = [v.real for _, v in samples]
    assert rs == sorted(rs)
    # F(r) = -log(1 - r)/r blows up logarithmically along the real axis
    assert all(b > a for a, b in zip(vals, vals[1:]))
    r_last, v_last = samples[-1]
    assert v_last.real == pytest.approx(-math.log(1.0 - r_last) / r_last,
                                        abs=1e-2)


def test_power_series_short_input_uses_three_windows():
    c = CoefficientSequence(coeffs=np.array(
        [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125], complex))
    rep = power_series_suite(c)
    assert len(rep.coefficient_window_maxima) == 3
    assert rep.coefficient_window_maxima == (0.5, 0.5, 0.25)
    assert rep.coefficient_verdict is Verdict.INCONCLUSIVE


def test_coefficient_sequence_validation():
    with pytest.raises(ValueError):
        CoefficientSequence(coeffs=np.array([1.0], complex))
    with pytest.raises(ValueError):
        CoefficientSequence(coeffs=np.array([1.0, np.inf], complex))
    with pytest.raises(ValueError):
        CoefficientSequence(coeffs=np.ones((2, 2), complex))
    c = CoefficientSequence(coeffs=np.arange(5).astype(complex))
    assert c.N == 4
