"""Robust locally weighted regression (loess) for a single predictor.

Every point is fitted exactly; there is no cell/interpolation shortcut.
Neighbourhoods are the ``r = ceil(span * n)`` nearest points, weighted by
the tricube kernel of distance over the ``r``-th nearest distance. Points
tied at exactly that distance are all kept. Robustness rounds reweight by
the bisquare of ``residual / (6 * median|residual|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LoessConfig",
    "LoessFit",
    "loess_fit",
    "loess_predict",
    "tricube",
    "bisquare",
]


@dataclass(frozen=True)
class LoessConfig:
    span: float = 0.75
    degree: int = 1
    robustness_iterations: int = 3

    def __post_init__(self):
        if not 0 < self.span <= 1:
            raise ValueError(f"span must lie in (0, 1], got {self.span}")
        if self.degree not in (1, 2):
            raise ValueError(f"degree must be 1 or 2, got {self.degree}")
        if self.robustness_iterations < 0:
            raise ValueError("robustness_iterations must be nonnegative")

    def neighbours(self, n: int) -> int:
        return min(n, max(1, math.ceil(self.span * n - 1e-12)))


@dataclass
class LoessFit:
    """Result of :func:`loess_fit`, with all arrays sorted by ``x``.

    ``order`` maps back to the caller's ordering: ``x == x_in[order]``.
    ``history[j]`` holds the fitted values after robustness round ``j``
    (``history[0]`` is the plain local fit). ``degree_reduced`` flags points
    whose local design was rank deficient and were fitted at lower degree.
    """

    x: np.ndarray
    y: np.ndarray
    fitted: np.ndarray
    residuals: np.ndarray
    robustness_weights: np.ndarray
    config: LoessConfig
    order: np.ndarray
    history: list = field(default_factory=list)
    degree_reduced: np.ndarray | None = None

    @property
    def warning(self) -> bool:
        return bool(self.degree_reduced is not None and self.degree_reduced.any())

    def fitted_in_input_order(self) -> np.ndarray:
        out = np.empty_like(self.fitted)
        out[self.order] = self.fitted
        return out

    def residuals_in_input_order(self) -> np.ndarray:
        out = np.empty_like(self.residuals)
        out[self.order] = self.residuals
        return out


def tricube(u):
    a = np.minimum(np.abs(np.asarray(u, dtype=float)), 1.0)
    t = 1.0 - a * a * a
    return t * t * t


def bisquare(u):
    u = np.minimum(np.abs(np.asarray(u, dtype=float)), 1.0)
    t = 1.0 - u * u
    return t * t


def _local_value(x0, x, y, robust_w, r, degree):
    """Fitted value at ``x0``; returns ``(value, reduced_flag)``."""
    dist = np.abs(x - x0)
    d = np.partition(dist, r - 1)[r - 1]
    inside = dist <= d
    if d == 0:
        # at least r points sit on x0: robust-weighted mean of the ties
        w = robust_w[inside]
        yy = y[inside]
        if w.sum() > 0:
            return float(np.dot(w, yy) / w.sum()), False
        return float(yy.mean()), False

    xs = (x[inside] - x0) / d
    w = tricube(dist[inside] / d) * robust_w[inside]
    use = w > 0
    if not use.any():
        # every neighbour has zero robustness weight
        return float(y[inside].mean()), True
    xs, w, yy = xs[use], w[use], y[inside][use]
    feasible = min(degree, len(np.unique(xs)) - 1)
    sw = np.sqrt(w)
    X = np.vander(xs, feasible + 1, increasing=True)
    coef, _, rank, _ = np.linalg.lstsq(X * sw[:, None], yy * sw, rcond=None)
    while rank < feasible + 1 and feasible > 0:
        feasible -= 1
        X = X[:, : feasible + 1]
        coef, _, rank, _ = np.linalg.lstsq(X * sw[:, None], yy * sw, rcond=None)
    return float(coef[0]), feasible < degree


_BLOCK = 256


def _fit_many(x0, x, y, robust_w, r, degree):
    """Batched local fits at the points ``x0`` (``x`` must be sorted).

    Solves the weighted normal equations in the rescaled coordinate
    ``(x - x0) / d``; points needing the tie rule or a reduced degree are
    routed through :func:`_local_value`.
    """
    m = x0.size
    values = np.empty(m)
    reduced = np.zeros(m, dtype=bool)
    starts = np.flatnonzero(np.r_[True, x[1:] != x[:-1]])
    k = degree + 1
    for lo in range(0, m, _BLOCK):
        q = x0[lo:lo + _BLOCK]
        diff = x[None, :] - q[:, None]
        dist = np.abs(diff)
        d = np.partition(dist, r - 1, axis=1)[:, r - 1]
        safe_d = np.where(d > 0, d, 1.0)
        # weights vanish beyond |u| = 1, so clipping only avoids overflow
        with np.errstate(over="ignore"):
            u = np.clip(diff / safe_d[:, None], -1.0, 1.0)
        w = tricube(u) * robust_w[None, :]
        positive = w > 0
        distinct = (np.add.reduceat(positive.astype(np.int64), starts, axis=1) > 0).sum(axis=1)
        ok = (d > 0) & (distinct >= k)

        powers = [np.ones_like(u), u]
        for _ in range(2 * degree - 1):
            powers.append(powers[-1] * u)
        moments = np.stack([(w * pw).sum(axis=1) for pw in powers], axis=1)
        rhs = np.stack([(w * pw) @ y for pw in powers[:k]], axis=1)
        idx = np.arange(k)
        A = moments[:, idx[:, None] + idx[None, :]]
        with np.errstate(all="ignore"):
            ok &= np.linalg.cond(A) < 1e10
        A[~ok] = np.eye(k)
        rhs[~ok] = 0.0
        beta = np.linalg.solve(A, rhs[:, :, None])[:, 0, 0]
        values[lo:lo + _BLOCK] = beta
        for j in np.flatnonzero(~ok):
            values[lo + j], reduced[lo + j] = _local_value(q[j], x, y, robust_w, r, degree)
    return values, reduced


def _fit_pass(x, y, robust_w, r, degree):
    return _fit_many(x, x, y, robust_w, r, degree)


def loess_fit(x, y, config: LoessConfig | None = None) -> LoessFit:
    """Fit a robust loess curve of ``y`` on ``x`` at the observed ``x``."""
    config = config or LoessConfig()
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError("x and y must have the same length")
    n = x.size
    if n < config.degree + 1:
        raise ValueError(f"need at least {config.degree + 1} points, got {n}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("x and y must be finite")
    r = config.neighbours(n)
    if r < config.degree + 1:
        raise ValueError(
            f"span {config.span} leaves {r} neighbours; degree {config.degree} needs "
            f"{config.degree + 1}")

    order = np.argsort(x, kind="stable")
    x, y = x[order], y[order]
    robust_w = np.ones(n)
    fitted, reduced = _fit_pass(x, y, robust_w, r, config.degree)
    history = [fitted]
    # a median residual at roundoff level means the data are interpolated
    floor = 1e-10 * float(np.mean(np.abs(y)))
    for _ in range(config.robustness_iterations):
        resid = y - fitted
        s = np.median(np.abs(resid))
        if s <= floor:
            robust_w = np.ones(n)
            break
        robust_w = bisquare(resid / (6.0 * s))
        fitted, red = _fit_pass(x, y, robust_w, r, config.degree)
        reduced |= red
        history.append(fitted)

    return LoessFit(
        x=x, y=y, fitted=fitted, residuals=y - fitted,
        robustness_weights=robust_w, config=config, order=order,
        history=history, degree_reduced=reduced,
    )


def loess_predict(fit: LoessFit, xq) -> np.ndarray:
    """Evaluate a fitted loess curve at new points.

    The local fits reuse the training data and the final robustness weights
    of ``fit``; neighbourhoods are taken around each query point.
    """
    xq = np.atleast_1d(np.asarray(xq, dtype=float))
    r = fit.config.neighbours(fit.x.size)
    return _fit_many(xq, fit.x, fit.y, fit.robustness_weights, r, fit.config.degree)[0]
