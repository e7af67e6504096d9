"""Matplotlib figure rendering for the command-line report path.

All figures go to SVG through the Agg backend with a fixed hash salt and
no embedded date, so regenerating a figure from the same inputs yields
byte-identical output.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

matplotlib.rcParams["svg.hashsalt"] = "tauberian-lab"

__all__ = [
    "save_figure",
    "line_plot",
    "decay_plot",
    "modulus_plot",
]

_SAVE_KW = dict(format="svg", metadata={"Date": None})


def save_figure(fig, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)


def line_plot(path: str, x: Sequence[float], series: dict[str, Sequence[float]],
              xlabel: str, ylabel: str, title: str,
              logy: bool = False, logx: bool = False) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, y in series.items():
        ax.plot(np.asarray(x, dtype=float), np.asarray(y, dtype=float),
                lw=1.0, label=label)
    if logy:
        ax.set_yscale("log")
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    save_figure(fig, path)


def decay_plot(path: str, window_mids: Sequence[float],
               window_maxima: Sequence[float], floor: float,
               title: str) -> None:
    """Per-window peak averages against the noise floor, log-log axes."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    mids = np.asarray(window_mids, dtype=float)
    peaks = np.maximum(np.asarray(window_maxima, dtype=float), 1e-300)
    ax.loglog(mids, peaks, "o-", lw=1.0, label="window max |average|")
    ax.axhline(floor, color="tab:red", ls="--", lw=1.0, label="noise floor")
    ax.set_xlabel("window midpoint h")
    ax.set_ylabel("max |average|")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    save_figure(fig, path)


def modulus_plot(path: str, deltas: Sequence[float], psi: Sequence[float],
                 title: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(np.asarray(deltas, dtype=float), np.asarray(psi, dtype=float),
            "o-", lw=1.0)
    ax.set_xlabel("step delta")
    ax.set_ylabel("worst decrease")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    save_figure(fig, path)
