"""Composite Simpson quadrature on uniform grids.

All integrators in this package run on uniformly sampled data, so the
only rules needed are

    simpson(y, dx)            ~ integral of y over the whole grid
    cumulative_simpson(y, dx) ~ integral of y from the left edge to
                                every grid point

Both are fourth order in dx for smooth integrands.  An even number of
intervals is handled by plain composite Simpson; an odd count gets a
Newton three-eighths panel at the right end (same order, no loss).  The
cumulative rule fills odd prefixes with a quadratic fitted through the
three samples ending at the prefix, which keeps the whole running
integral at O(dx^4).

Weights are assembled explicitly so that results are reproducible
bit-for-bit across runs: no adaptive stages, no reordering.
"""

from __future__ import annotations

import numpy as np

__all__ = ["simpson", "cumulative_simpson", "simpson_weights"]


def simpson_weights(n_points: int, dx: float) -> np.ndarray:
    """Quadrature weights w with sum(w * y) == simpson(y, dx).

    n_points must be at least 2.  Exposed so that transform routines can
    fold the weights into a single matrix-vector product.
    """
    if n_points < 2:
        raise ValueError("need at least two samples to integrate")
    w = np.zeros(n_points, dtype=float)
    n_int = n_points - 1
    if n_points == 2:
        w[:] = 0.5
        return w * dx
    if n_int % 2 == 0:
        w[0] = 1.0
        w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= 1.0 / 3.0
    else:
        # Simpson on the first n_int-3 intervals, 3/8 rule on the last 3.
        m = n_points - 3
        if m >= 2:
            w[0] = 1.0
            w[m - 1] = 1.0
            w[1:m - 1:2] = 4.0
            w[2:m - 1:2] = 2.0
            w[:m] *= 1.0 / 3.0
        w[m - 1] += 3.0 / 8.0
        w[m] += 9.0 / 8.0
        w[m + 1] += 9.0 / 8.0
        w[m + 2] += 3.0 / 8.0
    return w * dx


def simpson(y: np.ndarray, dx: float) -> complex | float:
    """Integral of uniformly sampled y with spacing dx."""
    y = np.asarray(y)
    w = simpson_weights(y.shape[-1], dx)
    return np.dot(y, w.astype(y.real.dtype)) if y.ndim == 1 else y @ w


# Quadratic end-panel weights: integral over the last interval of the
# parabola through the final three samples (and mirrored at the start).
_TAIL = np.array([-1.0, 8.0, 5.0]) / 12.0
_HEAD = np.array([5.0, 8.0, -1.0]) / 12.0


def cumulative_simpson(y: np.ndarray, dx: float) -> np.ndarray:
    """Running integral of y from index 0 to every index.

    Output has the same length as y, starts at 0, and agrees with
    simpson() at every even index.
    """
    y = np.asarray(y)
    n = y.shape[0]
    out = np.zeros(n, dtype=np.result_type(y.dtype, float))
    if n == 1:
        return out
    if n == 2:
        out[1] = 0.5 * dx * (y[0] + y[1])
        return out
    # Even prefixes by pairwise Simpson panels.
    panel = (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2]) * (dx / 3.0)
    out[2::2] = np.cumsum(panel)
    # Odd prefixes: even prefix plus one quadratic end panel.
    odd = np.arange(1, n, 2)
    head = odd == 1
    out[1] = dx * (_HEAD[0] * y[0] + _HEAD[1] * y[1] + _HEAD[2] * y[2])
    tail_idx = odd[~head]
    if tail_idx.size:
        out[tail_idx] = out[tail_idx - 1] + dx * (
            _TAIL[0] * y[tail_idx - 2] + _TAIL[1] * y[tail_idx - 1] + _TAIL[2] * y[tail_idx]
        )
    return out
