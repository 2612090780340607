"""Synthetic data for demonstrations and tests.

``monotone_spread`` draws residuals whose standard deviation grows linearly
with the fitted value; ``demo_raw`` is a bundled response/predictor set in
the style of an engine-emissions study, with a peaked mean curve and
Laplace errors whose spread depends on level. All generators are seeded.
"""

from __future__ import annotations

import csv
from importlib import resources

import numpy as np

from .diagnostics import ResidualSet

DEMO_SEED = 1993
DEMO_SIZE = 120


def monotone_spread(n: int = 500, seed: int = 0, spread: tuple = (1.0, 3.0)) -> ResidualSet:
    """Residuals ``(s0 + (s1 - s0) x) z`` at fitted values ``x = i/n, i = 1..n``.

    ``z`` is standard normal. ``spread=(1, 1)`` gives homoscedastic data.
    """
    rng = np.random.default_rng(seed)
    x = np.arange(1, n + 1) / n
    s0, s1 = spread
    resid = (s0 + (s1 - s0) * x) * rng.standard_normal(n)
    return ResidualSet(x, resid)


def make_demo_raw(n: int = DEMO_SIZE, seed: int = DEMO_SEED) -> tuple[np.ndarray, np.ndarray]:
    """Generate the bundled demo set; values are rounded to 4 decimals."""
    rng = np.random.default_rng(seed)
    x = np.sort(rng.uniform(0.55, 1.25, n))
    mean = 0.4 + 3.6 * np.exp(-((x - 0.9) / 0.13) ** 2)
    y = mean + 0.12 * (0.5 + mean / 4.0) * rng.laplace(0.0, 1.0, n)
    return np.round(x, 4), np.round(y, 4)


def demo_path():
    return resources.files("spreadloc").joinpath("data", "demo.csv")


def load_demo_raw() -> tuple[np.ndarray, np.ndarray]:
    """The bundled ``(x, y)`` demo data as shipped in ``data/demo.csv``."""
    with demo_path().open() as fh:
        rows = list(csv.reader(fh))
    arr = np.array(rows[1:], dtype=float)
    return arr[:, 0], arr[:, 1]
