"""Named test functions with known transforms and expected classifications.

Each entry bundles a boundary function tau on [0, inf), a recommended
sampling grid, whatever closed-form Laplace data is available, and the
classification verdicts the detector is expected to produce.  The entries
back the command-line interface (fixtures are addressed by name) and the
test suite (expected verdicts are asserted, closed-form transforms are
compared against quadrature).

Registry metadata lives in ``data/gallery.json``; this module attaches the
callables, which cannot be serialised.  The ``basis`` field records how an
entry's stated facts were obtained:

  closed-form        elementary integral, checked by hand
  reference-identity identity for the transform of x(1 + cos(x)/2)
  computed           produced by this package and frozen as a regression
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Mapping

import numpy as np

from .asymptotics import SingularPart, singular_part_from_json
from .signal import SampledFunction, Verdict

EULER_GAMMA = 0.5772156649015329

__all__ = [
    "EULER_GAMMA",
    "GalleryEntry",
    "load_gallery",
    "gallery_entry",
    "gallery_names",
]


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def _tau_one(x: np.ndarray) -> np.ndarray:
    return np.ones_like(x, dtype=complex)


def _tau_ramp(x: np.ndarray) -> np.ndarray:
    return x.astype(complex)


def _tau_l1_decay(x: np.ndarray) -> np.ndarray:
    return (1.0 / (1.0 + x) ** 2).astype(complex)


def _tau_pure_tone(x: np.ndarray) -> np.ndarray:
    return np.exp(2j * x)


def _tau_sine(x: np.ndarray) -> np.ndarray:
    return np.sin(x).astype(complex)


def _tau_osc_ramp(x: np.ndarray) -> np.ndarray:
    return (x * (1.0 + 0.5 * np.cos(x))).astype(complex)


def _tau_damped_tone(x: np.ndarray) -> np.ndarray:
    return np.exp(1j * x) / (1.0 + x)


def _tau_step(x: np.ndarray) -> np.ndarray:
    return (x >= 1.0).astype(complex)


def _tau_sqrt(x: np.ndarray) -> np.ndarray:
    return np.sqrt(x).astype(complex)


def _tau_log_plus_gamma(x: np.ndarray) -> np.ndarray:
    return (EULER_GAMMA + np.log(np.maximum(x, 1.0))).astype(complex)


_EVALUATORS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "one": _tau_one,
    "ramp": _tau_ramp,
    "l1_decay": _tau_l1_decay,
    "pure_tone": _tau_pure_tone,
    "sine": _tau_sine,
    "osc_ramp": _tau_osc_ramp,
    "damped_tone": _tau_damped_tone,
    "step": _tau_step,
    "sqrt": _tau_sqrt,
    "log_plus_gamma": _tau_log_plus_gamma,
}


# Closed-form transforms, exact for Re s > 0 except where the registry says
# transform_exact is false (then the value is the singular model only).
_TRANSFORMS: dict[str, Callable[[complex], complex]] = {
    "one": lambda s: 1.0 / s,
    "ramp": lambda s: 1.0 / s**2,
    "pure_tone": lambda s: 1.0 / (s - 2j),
    "sine": lambda s: 1.0 / (s**2 + 1.0),
    "osc_ramp": lambda s: 1.0 / s**2 + 0.25 / (s - 1j) ** 2 + 0.25 / (s + 1j) ** 2,
    "step": lambda s: np.exp(-s) / s,
    "sqrt": lambda s: 0.886226925452758 * s**-1.5,
}


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GalleryEntry:
    """One named fixture: function, grid, transform data, expected verdicts."""

    name: str
    description: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    grid_step: float
    xmax: float
    singular_part: SingularPart | None
    transform: Callable[[complex], complex] | None
    transform_exact: bool
    expected_verdicts: Mapping[float, Verdict]
    basis: str

    def sample(self, grid_step: float | None = None,
               xmax: float | None = None) -> SampledFunction:
        """Sample the fixture on its recommended grid (or an override)."""
        dx = self.grid_step if grid_step is None else grid_step
        xm = self.xmax if xmax is None else xmax
        return SampledFunction.from_function(self.evaluator, dx, xm)


def _build_entry(raw: dict) -> GalleryEntry:
    name = raw["name"]
    sp_raw = raw.get("singular_part")
    verdicts = {float(t): Verdict(v)
                for t, v in raw.get("expected_verdicts", {}).items()}
    return GalleryEntry(
        name=name,
        description=raw["description"],
        evaluator=_EVALUATORS[name],
        grid_step=float(raw["grid_step"]),
        xmax=float(raw["xmax"]),
        singular_part=None if sp_raw is None else singular_part_from_json(sp_raw),
        transform=_TRANSFORMS.get(name),
        transform_exact=bool(raw.get("transform_exact", False)),
        expected_verdicts=verdicts,
        basis=raw["basis"],
    )


def load_gallery() -> dict[str, GalleryEntry]:
    """Load the fixture registry shipped with the package."""
    text = resources.files("tauberian_lab").joinpath("data/gallery.json").read_text()
    raw = json.loads(text)
    entries = [_build_entry(e) for e in raw["entries"]]
    missing = set(_EVALUATORS) - {e.name for e in entries}
    if missing:
        raise RuntimeError(f"registry is missing evaluators for {sorted(missing)}")
    return {e.name: e for e in entries}


def gallery_entry(name: str) -> GalleryEntry:
    gallery = load_gallery()
    if name not in gallery:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(gallery))}")
    return gallery[name]


def gallery_names() -> list[str]:
    return sorted(load_gallery())
