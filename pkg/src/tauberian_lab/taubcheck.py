"""Windowed estimators for Tauberian side conditions.

Every quantity here is a finite-window surrogate for a limit condition:
the underlying notions are liminf/limsup statements as x -> infinity,
which no finite sample can certify.  Each check therefore works on an
explicit window [X0, X1] of the sample grid and reports what it
measured there; callers decide whether the window is representative.

The oscillation modulus of f over a window is

    Psi(delta) = max over x in [X0, X1], h in (0, delta] of |f(x+h) - f(x)|,

a non-decreasing, subadditive-up-to-edge-effects function of delta.
Decrease conditions replace |.| by a signed worst increment:

    slow decrease       : for given eps, some delta has worst increment > -eps,
    bounded decrease    : worst increment >= -M for the given delta,
    very slow decrease  : worst increment tends to >= 0 as the window
                          start moves right, for one fixed delta.

The exponentially weighted average

    T_theta(x) = e^(-theta x) integral_{0^-}^{x} e^(theta u) dtau(u)

smooths tau without losing information: tau is recovered exactly from
tau(x) = T_theta(x) + theta * integral_0^x T_theta(u) du, which is what
reconstruct_from_ingham implements (cumulative Simpson both ways).

All h and delta sweeps run on the sample grid itself.  No sub-grid
interpolation: results are deterministic functions of the samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .quadrature import cumulative_simpson, simpson_weights
from .signal import InsufficientWindowError, SampledFunction, StieltjesFunction

__all__ = [
    "OscillationModulus",
    "oscillation_modulus",
    "check_slowly_decreasing",
    "check_boundedly_decreasing",
    "VerySlowDecreaseProfile",
    "check_very_slowly_decreasing",
    "check_T2_condition",
    "ingham_average",
    "reconstruct_from_ingham",
    "smooth_representation",
]

# exp arguments above this overflow double precision
_EXP_LIMIT = 650.0


def _real_samples(f: SampledFunction) -> np.ndarray:
    v = f.samples
    scale = float(np.abs(v).max()) if v.size else 0.0
    if float(np.abs(v.imag).max(initial=0.0)) > 1e-9 * (1.0 + scale):
        raise ValueError("check requires real-valued samples")
    return v.real.copy()


def _start_index(f: SampledFunction, X0: float) -> int:
    n0 = int(round(X0 / f.grid_step))
    if n0 < 0 or X0 > f.xmax:
        raise ValueError(f"X0 = {X0} outside the analyzed support [0, {f.xmax}]")
    return n0


def _steps(f: SampledFunction, delta: float) -> int:
    """Number of grid steps spanned by delta (at least 1)."""
    k = int(math.floor(delta / f.grid_step + 1e-9))
    if k < 1:
        raise ValueError(
            f"delta = {delta} shorter than the grid step {f.grid_step}"
        )
    return k


# ----------------------------------------------------------------------
# oscillation modulus
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OscillationModulus:
    """Windowed estimates of Psi(delta) on the window [X0, X1].

    psi_values[i] is the max of |f(x+h) - f(x)| over grid x in the
    window and grid h in (0, deltas[i]].  All deltas share the window,
    which is what makes psi_values non-decreasing by construction.
    """

    deltas: tuple[float, ...]
    psi_values: tuple[float, ...]
    window: tuple[float, float]

    @property
    def slope_sup(self) -> float:
        """sup of Psi(delta)/delta, the right-derivative estimate at 0."""
        return max(p / d for d, p in zip(self.deltas, self.psi_values))


def oscillation_modulus(
    f: SampledFunction, deltas: Sequence[float], X0: float = 0.0
) -> OscillationModulus:
    """Psi(delta) for each delta, over the common window [X0, xmax - max delta].

    The shared window (rather than a per-delta one) guarantees the
    monotonicity of the estimates in delta; it shrinks the x-range by
    the largest delta requested.
    """
    ds = sorted(float(d) for d in deltas)
    if not ds or ds[0] <= 0.0:
        raise ValueError("deltas must be positive")
    n0 = _start_index(f, X0)
    k_of = [_steps(f, d) for d in ds]
    k_max = k_of[-1]
    v = f.samples
    n1 = v.shape[0] - 1 - k_max
    if n1 < n0:
        raise InsufficientWindowError(
            f"X0 = {X0} plus max delta = {ds[-1]} exceeds xmax = {f.xmax}"
        )
    per_k = np.empty(k_max + 1)
    per_k[0] = 0.0
    base = v[n0 : n1 + 1]
    for k in range(1, k_max + 1):
        per_k[k] = float(np.abs(v[n0 + k : n1 + 1 + k] - base).max())
    running = np.maximum.accumulate(per_k)
    psi = tuple(float(running[k]) for k in k_of)
    return OscillationModulus(
        deltas=tuple(ds),
        psi_values=psi,
        window=(n0 * f.grid_step, n1 * f.grid_step),
    )


# ----------------------------------------------------------------------
# decrease conditions
# ----------------------------------------------------------------------

def _worst_increment(v: np.ndarray, n0: int, n1: int, k_max: int) -> float:
    """min over x-index n in [n0, n1], step k in [1, k_max] of v[n+k]-v[n].

    The h = 0 increment is identically zero and omitted; callers that
    need the closed-interval [0, delta] convention take min(0, result).
    """
    worst = 0.0
    base = v[n0 : n1 + 1]
    for k in range(1, k_max + 1):
        worst = min(worst, float((v[n0 + k : n1 + 1 + k] - base).min()))
    return worst


def check_slowly_decreasing(
    f: SampledFunction,
    eps: float,
    X0: float = 0.0,
    delta_start: float | None = None,
) -> tuple[bool, float]:
    """Search for a delta whose worst windowed increment exceeds -eps.

    Tries delta_start, delta_start/2, ... and finally eps itself; the
    search floor at delta = eps is deliberate: every continuous function
    has increments above -eps once delta is small enough, so passing
    with delta << eps would be vacuous.  Returns (True, delta) for the
    first (largest) delta with

        min over x in [X0, xmax - delta], h in [0, delta] of
            f(x+h) - f(x)  >  -eps,

    else (False, 0.0).
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    v = _real_samples(f)
    n0 = _start_index(f, X0)
    if delta_start is None:
        delta_start = min(2.0, (f.xmax - X0) / 8.0)
    grid: list[float] = []
    d = float(delta_start)
    while d > eps * (1.0 + 1e-12):
        grid.append(d)
        d /= 2.0
    grid.append(eps)
    for delta in grid:
        if delta < f.grid_step:
            break
        k = _steps(f, delta)
        n1 = v.shape[0] - 1 - k
        if n1 < n0:
            continue
        worst = _worst_increment(v, n0, n1, k)
        if worst > -eps:
            return True, delta
    return False, 0.0


def check_boundedly_decreasing(
    f: SampledFunction, delta: float, X0: float = 0.0
) -> float:
    """M = max(0, -(worst increment)) for x in [X0, xmax - delta], h in [0, delta]."""
    v = _real_samples(f)
    n0 = _start_index(f, X0)
    k = _steps(f, delta)
    n1 = v.shape[0] - 1 - k
    if n1 < n0:
        raise InsufficientWindowError(
            f"X0 = {X0} plus delta = {delta} exceeds xmax = {f.xmax}"
        )
    return max(0.0, -_worst_increment(v, n0, n1, k))


@dataclass(frozen=True)
class VerySlowDecreaseProfile:
    """Worst increment over [X0, xmax - delta] as X0 sweeps right.

    holds is the windowed read of "liminf of worst increments >= 0":
    the profile value at the rightmost window start is above -tol.
    """

    delta: float
    X0_values: tuple[float, ...]
    inf_values: tuple[float, ...]
    tol: float
    holds: bool


def check_very_slowly_decreasing(
    f: SampledFunction,
    X0_grid: Sequence[float],
    delta: float = 0.5,
    tol: float = 1e-2,
) -> VerySlowDecreaseProfile:
    """Running infimum of increments for one fixed delta.

    inf_values[i] = min over x in [X0_grid[i], xmax - delta] and grid
    h in [0, delta] of f(x+h) - f(x).  Non-decreasing in the window
    start by construction (suffix minima of one increment array).
    """
    v = _real_samples(f)
    k = _steps(f, delta)
    n_last = v.shape[0] - 1 - k
    if n_last < 0:
        raise InsufficientWindowError(f"delta = {delta} exceeds xmax = {f.xmax}")
    inner = np.zeros(n_last + 1)
    for kk in range(1, k + 1):
        np.minimum(inner, v[kk : n_last + 1 + kk] - v[: n_last + 1], out=inner)
    suffix = np.minimum.accumulate(inner[::-1])[::-1]
    x0s: list[float] = []
    vals: list[float] = []
    for X0 in sorted(float(x) for x in X0_grid):
        n0 = _start_index(f, X0)
        if n0 > n_last:
            raise InsufficientWindowError(
                f"X0 = {X0} leaves no x with x + delta <= xmax = {f.xmax}"
            )
        x0s.append(n0 * f.grid_step)
        vals.append(float(suffix[n0]))
    holds = vals[-1] >= -tol
    return VerySlowDecreaseProfile(
        delta=float(delta),
        X0_values=tuple(x0s),
        inf_values=tuple(vals),
        tol=float(tol),
        holds=holds,
    )


def check_T2_condition(f: SampledFunction, beta: float, X0: float = 0.0) -> bool:
    """Whether e^(beta x) f(x) is >= 0 and non-decreasing for x >= X0.

    Both comparisons are done in unscaled form, f[n+1] e^(beta dx)
    against f[n], so the product e^(beta x) f(x) never materializes and
    cannot overflow; the -1e-12 tolerance on the scaled quantity turns
    into -1e-12 e^(-beta x) here (it underflows to an exact comparison
    far out, which is the conservative direction).
    """
    v = _real_samples(f)
    n0 = _start_index(f, X0)
    x = f.x[n0:]
    v = v[n0:]
    with np.errstate(over="ignore"):
        slack = 1e-12 * np.exp(np.minimum(-beta * x, _EXP_LIMIT))
    if np.any(v < -slack):
        return False
    growth = math.exp(beta * f.grid_step)
    return bool(np.all(v[1:] * growth - v[:-1] >= -slack[:-1]))


# ----------------------------------------------------------------------
# exponentially weighted averages
# ----------------------------------------------------------------------

def ingham_average(
    tau: Union[StieltjesFunction, SampledFunction],
    theta: float,
    grid_step: float | None = None,
    xmax: float | None = None,
) -> SampledFunction:
    """T_theta(x) = e^(-theta x) integral_{0^-}^{x} e^(theta u) dtau(u).

    A SampledFunction argument is read as the density dtau = f(u) du.
    A StieltjesFunction contributes its jumps (mass at u = 0 included,
    per the 0^- lower limit) plus its density part; the output grid
    comes from the density when present, else from grid_step/xmax.
    theta * xmax above 650 would overflow the e^(theta u) weights and
    raises instead.
    """
    if theta <= 0.0:
        raise ValueError(f"theta must be positive, got {theta}")
    if isinstance(tau, SampledFunction):
        density: SampledFunction | None = tau
        jumps: tuple[tuple[float, float], ...] = ()
    else:
        density = tau.ac_part
        jumps = tuple(zip(tau.jump_points, tau.jump_masses))
    if density is not None:
        dx, X = density.grid_step, density.xmax
    else:
        if grid_step is None or xmax is None:
            raise ValueError(
                "jump-only input needs grid_step and xmax for the output grid"
            )
        dx, X = float(grid_step), float(xmax)
    if theta * X > _EXP_LIMIT:
        raise ValueError(
            f"theta * xmax = {theta * X:.1f} overflows the exponential weights; "
            "rescale or shorten the window"
        )
    n = int(round(X / dx))
    x = np.arange(n + 1) * dx
    total = np.zeros(n + 1, dtype=complex)
    if density is not None:
        total += cumulative_simpson(np.exp(theta * x) * density.samples, dx)
    if jumps:
        pts = np.array([p for p, _ in jumps])
        wts = np.array([m * math.exp(theta * p) for p, m in jumps])
        inside = pts <= X
        csum = np.concatenate(([0.0], np.cumsum(wts[inside])))
        idx = np.searchsorted(pts[inside], x, side="right")
        total += csum[idx]
    return SampledFunction(grid_step=dx, xmax=n * dx, samples=np.exp(-theta * x) * total)


def reconstruct_from_ingham(T: SampledFunction, theta: float) -> SampledFunction:
    """tau(x) = T_theta(x) + theta * integral_0^x T_theta(u) du."""
    if theta <= 0.0:
        raise ValueError(f"theta must be positive, got {theta}")
    rebuilt = T.samples + theta * cumulative_simpson(T.samples, T.grid_step)
    return SampledFunction(grid_step=T.grid_step, xmax=T.xmax, samples=rebuilt)


# ----------------------------------------------------------------------
# smooth representation
# ----------------------------------------------------------------------

def _bump_derivative(width: float, k: int, dx: float) -> np.ndarray:
    """phi'(y) on the y grid for the normalized bump
    phi(y) = 30 y^2 (w-y)^2 / w^5 on (0, w), so phi' = 60 y (w-y)(w-2y)/w^5."""
    y = np.arange(k + 1) * dx
    w = width
    return 60.0 * y * (w - y) * (w - 2.0 * y) / w**5


def smooth_representation(
    f: SampledFunction, mollifier_width: float
) -> tuple[SampledFunction, float]:
    """Differentiable g with f(x) = integral_0^x g + O(1) on the window.

    g is the derivative of the mollified shift average
    x -> integral_0^w f(x+y) phi(y) dy with phi a fixed normalized
    polynomial bump on (0, w); differentiation lands on the bump, so g
    needs no derivative of the data:

        g(x) = - integral_0^w f(x+y) phi'(y) dy.

    Returns (g on [0, xmax - w], measured sup of |f(x) - integral_0^x g|).
    Inputs whose oscillation grows along the window (back-half modulus
    above 1.5x the front half) have no bounded representation of this
    form and raise ValueError.
    """
    v = _real_samples(f)
    k = int(round(mollifier_width / f.grid_step))
    if k < 4:
        raise ValueError(
            f"mollifier width {mollifier_width} spans fewer than 4 grid steps"
        )
    n = v.shape[0]
    if n - 1 - k < 8:
        raise InsufficientWindowError(
            f"width {mollifier_width} leaves too little of xmax = {f.xmax}"
        )
    # unbounded-oscillation screen: compare the modulus on the two half-windows
    mid = (n - 1 - k) // 2
    scale = float(np.abs(v).max())
    front = _osc_range(v, 0, mid, k)
    back = _osc_range(v, mid, n - 1 - k, k)
    if back > 1.5 * front + 1e-9 * (1.0 + scale):
        raise ValueError(
            "unbounded oscillation detected: modulus grows along the window "
            f"(front {front:.3g}, back {back:.3g})"
        )
    dphi = _bump_derivative(mollifier_width, k, f.grid_step)
    weights = simpson_weights(k + 1, f.grid_step) * dphi
    g_vals = -np.correlate(v, weights, mode="valid")
    g = SampledFunction(
        grid_step=f.grid_step,
        xmax=(n - 1 - k) * f.grid_step,
        samples=g_vals.astype(complex),
    )
    integral = cumulative_simpson(g_vals, f.grid_step)
    remainder = float(np.abs(v[: g_vals.shape[0]] - integral).max())
    return g, remainder


def _osc_range(v: np.ndarray, n0: int, n1: int, k_max: int) -> float:
    best = 0.0
    base = v[n0 : n1 + 1]
    for k in range(1, k_max + 1):
        best = max(best, float(np.abs(v[n0 + k : n1 + 1 + k] - base).max()))
    return best
