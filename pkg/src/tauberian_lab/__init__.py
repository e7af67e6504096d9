"""Numerical laboratory for the boundary behaviour of Laplace transforms.

The package measures, at desk scale, the objects that complex Tauberian
arguments manipulate symbolically: truncated transforms near the
imaginary axis, band-limited local averages and their decay or
boundedness, one-sided regularity moduli, and the transfer from singular
transform data to time-domain main terms.

Modules:

  quadrature   composite Simpson rules (plain, cumulative) with end panels
  specfun      gamma, polygamma, and reciprocal-gamma derivative recurrences
  asymptotics  singular-part data types and the transfer to main terms
  signal       sampled functions, truncated transforms, kernel averages,
               and the boundary-point classifier
  taubcheck    oscillation modulus and slow-decrease / growth-rate checks
  experiments  kernel integral table, finite-form inequality, transfer
               soundness, density deviation, exceptional-set audit,
               power-series suite
  gallery      named fixtures with known transforms and expected verdicts
  acceptance   the runnable acceptance-criterion registry
  cli          the ``taulab`` command-line front end
"""

from __future__ import annotations

__version__ = "0.1.0"

from .signal import SampledFunction, StieltjesFunction, Verdict, fejer_kernel

__all__ = [
    "__version__",
    "SampledFunction",
    "StieltjesFunction",
    "Verdict",
    "fejer_kernel",
]
