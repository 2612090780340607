"""Symmetric zero-mean error models and their folded densities.

The four models cover the usual suspects for regression errors: Gaussian,
Student t, the Tukey contaminated normal and the Laplace (double
exponential). Every density accepts scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "ErrorModel",
    "KINDS",
    "density",
    "folded_density",
    "sample",
]

KINDS = ("gaussian", "student_t", "contaminated_normal", "laplace")

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class ErrorModel:
    """A symmetric error distribution with location 0.

    Parameters are validated on construction. ``df`` must exceed 3 so that
    the third absolute moment exists. The contaminated normal is the scale
    mixture ``(1 - eps) N(0, s^2) + eps N(0, (k s)^2)`` with
    ``eps = contamination_fraction`` and ``k = scale_inflation``.
    """

    kind: str
    scale: float = 1.0
    df: float | None = None
    contamination_fraction: float = 0.05
    scale_inflation: float = 3.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.kind == "student_t":
            if self.df is None or not (math.isfinite(self.df) and self.df > 3):
                raise ValueError(f"student_t needs df > 3 for a finite third moment, got {self.df}")
        elif self.df is not None:
            raise ValueError("df only applies to student_t")
        if self.kind == "contaminated_normal":
            if not 0 < self.contamination_fraction < 1:
                raise ValueError("contamination_fraction must lie in (0, 1)")
            if not (math.isfinite(self.scale_inflation) and self.scale_inflation > 1):
                raise ValueError("scale_inflation must exceed 1")

    @classmethod
    def gaussian(cls, scale: float = 1.0) -> ErrorModel:
        return cls("gaussian", scale=scale)

    @classmethod
    def student_t(cls, df: float, scale: float = 1.0) -> ErrorModel:
        return cls("student_t", scale=scale, df=float(df))

    @classmethod
    def contaminated_normal(cls, contamination_fraction: float = 0.05,
                            scale_inflation: float = 3.0,
                            scale: float = 1.0) -> ErrorModel:
        return cls("contaminated_normal", scale=scale,
                   contamination_fraction=contamination_fraction,
                   scale_inflation=scale_inflation)

    @classmethod
    def laplace(cls, scale: float = 1.0) -> ErrorModel:
        return cls("laplace", scale=scale)

    def rescaled(self, factor: float) -> ErrorModel:
        """The model of ``factor * E``."""
        return ErrorModel(self.kind, self.scale * factor, self.df,
                          self.contamination_fraction, self.scale_inflation)

    @property
    def label(self) -> str:
        if self.kind == "student_t":
            return f"t{self.df:g}"
        if self.kind == "contaminated_normal":
            return (f"{100 * self.contamination_fraction:g}% "
                    f"{self.scale_inflation:g}-sigma contamination")
        return self.kind.capitalize()


def _unit_density(model: ErrorModel, z):
    """Density of ``E / scale`` at ``z``."""
    if model.kind == "gaussian":
        return np.exp(-0.5 * z * z - _LOG_SQRT_2PI)
    if model.kind == "laplace":
        return 0.5 * np.exp(-np.abs(z))
    if model.kind == "student_t":
        nu = model.df
        log_c = gammaln(0.5 * (nu + 1)) - gammaln(0.5 * nu) - 0.5 * math.log(nu * math.pi)
        return np.exp(log_c - 0.5 * (nu + 1) * np.log1p(z * z / nu))
    eps = model.contamination_fraction
    k = model.scale_inflation
    core = np.exp(-0.5 * z * z - _LOG_SQRT_2PI)
    wide = np.exp(-0.5 * (z / k) ** 2 - _LOG_SQRT_2PI) / k
    return (1.0 - eps) * core + eps * wide


def density(model: ErrorModel, e):
    """Probability density ``f(e)`` of the error model."""
    z = np.asarray(e, dtype=float) / model.scale
    out = _unit_density(model, z) / model.scale
    return float(out) if np.ndim(out) == 0 else out


def folded_density(model: ErrorModel, a):
    """Density of ``|E|`` at ``a >= 0``, i.e. ``f(a) + f(-a)``."""
    arr = np.asarray(a, dtype=float)
    if np.any(arr < 0):
        raise ValueError("folded density is defined for a >= 0 only")
    # f is symmetric for every model here, so f(a) + f(-a) == 2 f(a)
    out = 2.0 * _unit_density(model, arr / model.scale) / model.scale
    return float(out) if np.ndim(out) == 0 else out


def sample(model: ErrorModel, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` errors from ``model`` using ``rng``."""
    if model.kind == "gaussian":
        z = rng.standard_normal(n)
    elif model.kind == "laplace":
        z = rng.laplace(0.0, 1.0, n)
    elif model.kind == "student_t":
        z = rng.standard_t(model.df, n)
    else:
        z = rng.standard_normal(n)
        wide = rng.random(n) < model.contamination_fraction
        z[wide] *= model.scale_inflation
    return model.scale * z
