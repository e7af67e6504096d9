from __future__ import annotations

import numpy as np
import pytest

from tauberian_lab.gallery import load_gallery
from tauberian_lab.signal import SampledFunction


@pytest.fixture(scope="session")
def gallery():
    return load_gallery()


@pytest.fixture(scope="session")
def default_samples(gallery):
    """Fixture samples on their recommended grids, built once per session."""
    cache: dict[str, SampledFunction] = {}

    def get(name: str) -> SampledFunction:
        if name not in cache:
            cache[name] = gallery[name].sample()
        return cache[name]

    return get


@pytest.fixture(scope="session")
def sine_medium():
    return SampledFunction.from_function(
        lambda x: np.sin(x).astype(complex), grid_step=0.005, xmax=200.0)


@pytest.fixture(scope="session")
def ramp_medium():
    return SampledFunction.from_function(
        lambda x: x.astype(complex), grid_step=0.005, xmax=200.0)
