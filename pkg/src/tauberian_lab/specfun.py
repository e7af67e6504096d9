"""Gamma, polygamma, and derivatives of the reciprocal gamma function.

Everything here is real-argument, positive-axis only, which is all the
transfer formulas need.

  gamma(y)              Lanczos approximation, g = 7, 9 coefficients.
  polygamma(m, y)       psi^(m)(y); argument shifted upward with the
                        recurrence psi^(m)(y) = psi^(m)(y+1)
                        + (-1)^(m+1) m! / y^(m+1) until y >= 10, then a
                        Bernoulli asymptotic series.
  recip_gamma_derivs    D_j(w) = (d/dy)^j [1/Gamma(y)] at y = w, built
                        from the Leibniz recurrence

                            f = 1/Gamma,  f' = -psi_0 * f,
                            f^(j+1) = -sum_{i<=j} C(j,i) psi_0^(i) f^(j-i).

These coefficients enter the power-log terms of the transfer map: the
inverse transform of s^(-b-1) log^k(1/s) carries the constants D_j(b+1)
for j = 0..k, so the values must be cheap and reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["gamma", "polygamma", "recip_gamma_derivs", "ReciprocalGammaDerivs"]

MAX_DERIV_ORDER = 12

# Lanczos coefficients for g = 7 (double precision working set).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = 2.5066282746310002

# B_2, B_4, ..., B_20.
_BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)

_ASYMPTOTIC_CUTOFF = 10.0


def gamma(y: float) -> float:
    """Gamma(y) for y > 0."""
    y = float(y)
    if not y > 0.0:
        raise ValueError(f"gamma requires y > 0, got {y}")
    if y < 0.5:
        # One upward shift keeps the Lanczos core on its good range.
        return gamma(y + 1.0) / y
    if y > 40.0:
        # For large arguments the exp/pow exponent is ~y log y and its
        # last-ulp error alone would breach 1e-13, so step down to the
        # core range instead; the integer subtractions are exact.
        prod = 1.0
        while y > 40.0:
            y -= 1.0
            prod *= y
        return gamma(y) * prod
    z = y - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    # Split the power so the intermediate stays finite up to the
    # double-precision overflow point of Gamma itself (y ~ 171.6).
    half_pow = t ** (0.5 * (z + 0.5))
    return _SQRT_TWO_PI * half_pow * math.exp(-t) * half_pow * acc


def _polygamma_asymptotic(m: int, y: float) -> float:
    """psi^(m)(y) for y at or above the asymptotic cutoff."""
    y2 = 1.0 / (y * y)
    if m == 0:
        acc = 0.0
        yp = y2
        for idx, b2k in enumerate(_BERNOULLI_EVEN):
            acc += b2k / (2.0 * (idx + 1)) * yp
            yp *= y2
        return math.log(y) - 0.5 / y - acc
    # (-1)^(m-1) [ (m-1)!/y^m + m!/(2 y^(m+1)) + sum B_2k (2k+m-1)!/((2k)! y^(2k+m)) ]
    lead = math.factorial(m - 1) / y**m + math.factorial(m) / (2.0 * y ** (m + 1))
    acc = 0.0
    yp = 1.0 / y ** (m + 2)
    for idx, b2k in enumerate(_BERNOULLI_EVEN):
        twok = 2 * (idx + 1)
        coeff = b2k * math.factorial(twok + m - 1) / math.factorial(twok)
        acc += coeff * yp
        yp *= y2
    sign = 1.0 if (m - 1) % 2 == 0 else -1.0
    return sign * (lead + acc)


def polygamma(m: int, y: float) -> float:
    """psi^(m)(y) = (d/dy)^(m+1) log Gamma(y), for y > 0 and m >= 0."""
    if m < 0 or m != int(m):
        raise ValueError(f"derivative order must be a nonnegative integer, got {m}")
    m = int(m)
    y = float(y)
    if not y > 0.0:
        raise ValueError(f"polygamma requires y > 0, got {y}")
    shift = 0.0
    while y < _ASYMPTOTIC_CUTOFF:
        if m == 0:
            shift -= 1.0 / y
        else:
            sign = 1.0 if m % 2 == 1 else -1.0
            shift += sign * math.factorial(m) / y ** (m + 1)
        y += 1.0
    return _polygamma_asymptotic(m, y) + shift


@dataclass(frozen=True)
class ReciprocalGammaDerivs:
    """Derivatives of 1/Gamma at a point.

    values[j] holds (d/dy)^j [1/Gamma(y)] evaluated at y = omega, for
    j = 0..jmax.  values[0] * Gamma(omega) == 1 up to roundoff.
    """

    omega: float
    jmax: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.jmax + 1:
            raise ValueError("values must have length jmax + 1")


def recip_gamma_derivs(omega: float, jmax: int) -> ReciprocalGammaDerivs:
    """First jmax derivatives of 1/Gamma at omega > 0.

    The recurrence needs psi_0 and its first jmax-1 derivatives, all of
    which come from polygamma above; no finite differencing is involved,
    so recomputing with a larger jmax extends the tuple without changing
    the existing entries.
    """
    omega = float(omega)
    if not omega > 0.0:
        raise ValueError(f"recip_gamma_derivs requires omega > 0, got {omega}")
    if jmax < 0:
        raise ValueError(f"jmax must be nonnegative, got {jmax}")
    if jmax > MAX_DERIV_ORDER:
        raise ValueError(
            f"jmax = {jmax} exceeds the supported maximum of {MAX_DERIV_ORDER}"
        )
    psi = [polygamma(i, omega) for i in range(max(jmax, 1))]
    f = [1.0 / gamma(omega)]
    for j in range(jmax):
        acc = 0.0
        for i in range(j + 1):
            acc += math.comb(j, i) * psi[i] * f[j - i]
        f.append(-acc)
    return ReciprocalGammaDerivs(omega=omega, jmax=jmax, values=tuple(f[: jmax + 1]))
