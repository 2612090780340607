"""Spread-location diagnostics built on symmetrized absolute residuals.

The workflow: fold the residuals, pick the power that makes the absolute
residuals most nearly symmetric, then plot the transformed absolute
residuals against the fitted values with a robust loess trend. A rising or
falling trend is monotone spread.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.stats import rankdata

from .loess import LoessConfig, LoessFit, loess_fit, loess_predict
from .transform import TABLE_POWERS, apply_power, sample_skewness

__all__ = [
    "ZeroResidualError",
    "InsufficientDataError",
    "ResidualSet",
    "PowerSelection",
    "SpreadLocationData",
    "BoxplotStats",
    "SpreadStatistic",
    "fold",
    "quartile_skewness",
    "select_power",
    "spread_location",
    "monotone_spread_statistic",
    "spearman",
    "boxplot_stats",
    "common_axis_rescale",
    "residuals_from_raw",
]

TREND_GRID_POINTS = 200


class ZeroResidualError(ValueError):
    def __init__(self, indices):
        self.indices = list(indices)
        shown = ", ".join(str(i) for i in self.indices[:10])
        more = "" if len(self.indices) <= 10 else f" and {len(self.indices) - 10} more"
        super().__init__(
            f"{len(self.indices)} zero residual(s) at index {shown}{more}; "
            "the power transform needs |residual| > 0 (drop them explicitly to continue)")


class InsufficientDataError(ValueError):
    pass


@dataclass
class ResidualSet:
    """Fitted values and residuals of some model, with a zero-residual policy.

    With ``zero_policy="drop"`` exact zeros are removed on construction and
    counted in ``dropped_count``; with ``"error"`` they are kept and
    :func:`fold` refuses them.
    """

    fitted: np.ndarray
    residuals: np.ndarray
    zero_policy: str = "error"
    dropped_count: int = 0

    def __post_init__(self):
        self.fitted = np.asarray(self.fitted, dtype=float).ravel()
        self.residuals = np.asarray(self.residuals, dtype=float).ravel()
        if self.fitted.shape != self.residuals.shape:
            raise ValueError("fitted and residuals differ in length")
        if self.zero_policy not in ("error", "drop"):
            raise ValueError(f"zero_policy must be 'error' or 'drop', got {self.zero_policy!r}")
        if not (np.all(np.isfinite(self.fitted)) and np.all(np.isfinite(self.residuals))):
            raise ValueError("fitted values and residuals must be finite")
        if self.zero_policy == "drop":
            keep = self.residuals != 0
            self.dropped_count += int((~keep).sum())
            self.fitted = self.fitted[keep]
            self.residuals = self.residuals[keep]

    def __len__(self):
        return self.residuals.size


def fold(rs: ResidualSet) -> np.ndarray:
    """Absolute residuals, all strictly positive."""
    zeros = np.flatnonzero(rs.residuals == 0)
    if zeros.size:
        raise ZeroResidualError(zeros)
    return np.abs(rs.residuals)


def quartile_skewness(data) -> float:
    """Bowley skewness ``(q3 + q1 - 2 median) / (q3 - q1)``."""
    q1, med, q3 = np.percentile(np.asarray(data, dtype=float), [25, 50, 75])
    if q3 == q1:
        raise InsufficientDataError("interquartile range is zero")
    return float((q3 + q1 - 2.0 * med) / (q3 - q1))


_CRITERIA = {"moment": sample_skewness, "quartile": quartile_skewness}


@dataclass
class PowerSelection:
    chosen_p: float
    grid: tuple
    skewness_by_p: list
    criterion: str = "moment"

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "chosen_p": self.chosen_p,
            "grid": list(self.grid),
            "skewness_by_p": [[p, s] for p, s in self.skewness_by_p],
        }


def select_power(abs_residuals, grid: Sequence[float] = TABLE_POWERS,
                 criterion: str = "moment") -> PowerSelection:
    """Choose the grid power whose transform is closest to symmetric.

    ``criterion="moment"`` uses the moment coefficient g1, ``"quartile"``
    the quartile skewness a boxplot shows. Near-ties (within 1e-12) go to
    the power closest to 1, i.e. the mildest transformation.
    """
    if criterion not in _CRITERIA:
        raise ValueError(f"criterion must be one of {sorted(_CRITERIA)}")
    if len(grid) == 0:
        raise ValueError("empty power grid")
    a = np.asarray(abs_residuals, dtype=float).ravel()
    if a.size < 3:
        raise InsufficientDataError("need at least 3 absolute residuals")
    stat = _CRITERIA[criterion]
    scores = [(float(p), stat(apply_power(a, p))) for p in grid]
    best = min(abs(s) for _, s in scores)
    candidates = [p for p, s in scores if abs(s) <= best + 1e-12]
    chosen = min(candidates, key=lambda p: abs(p - 1.0))
    return PowerSelection(chosen, tuple(float(p) for p in grid), scores, criterion)


@dataclass
class SpreadLocationData:
    fitted: np.ndarray
    transformed_abs_residuals: np.ndarray
    p: float
    trend: LoessFit
    trend_curve: np.ndarray = field(repr=False)

    def trend_at(self, x) -> np.ndarray:
        return loess_predict(self.trend, x)


def spread_location(rs: ResidualSet, p: float,
                    config: LoessConfig | None = None,
                    grid_points: int = TREND_GRID_POINTS) -> SpreadLocationData:
    """Transformed absolute residuals against fitted values, plus loess trend."""
    config = config or LoessConfig()
    b = apply_power(fold(rs), p)
    b = np.atleast_1d(b)
    trend = loess_fit(rs.fitted, b, config)
    lo, hi = float(rs.fitted.min()), float(rs.fitted.max())
    xs = np.linspace(lo, hi, grid_points) if hi > lo else np.full(1, lo)
    curve = np.column_stack([xs, loess_predict(trend, xs)])
    return SpreadLocationData(rs.fitted.copy(), b, float(p), trend, curve)


class SpreadStatistic(NamedTuple):
    value: float
    degenerate: bool


def spearman(x, y) -> SpreadStatistic:
    """Spearman rank correlation with average ranks for ties."""
    rx = rankdata(np.asarray(x, dtype=float))
    ry = rankdata(np.asarray(y, dtype=float))
    rx = rx - rx.mean()
    ry = ry - ry.mean()
    denom = np.sqrt(np.dot(rx, rx) * np.dot(ry, ry))
    if denom == 0:
        return SpreadStatistic(0.0, True)
    return SpreadStatistic(float(np.clip(np.dot(rx, ry) / denom, -1.0, 1.0)), False)


def monotone_spread_statistic(sl: SpreadLocationData) -> SpreadStatistic:
    """Rank correlation of transformed absolute residuals with fitted values.

    Positive values mean spread grows with level. No threshold is applied;
    reading it is left to the analyst.
    """
    return spearman(sl.fitted, sl.transformed_abs_residuals)


@dataclass
class BoxplotStats:
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: list
    rescale_offset: float = 0.0
    rescale_factor: float = 1.0
    n: int = 0

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def common_axis_rescale(data) -> tuple[np.ndarray, float, float]:
    """Map data affinely onto [0, 1]; returns ``(values, offset, factor)``."""
    x = np.asarray(data, dtype=float).ravel()
    lo, hi = float(x.min()), float(x.max())
    factor = 1.0 / (hi - lo) if hi > lo else 1.0
    return (x - lo) * factor, lo, factor


def boxplot_stats(data, common_axis: bool = False) -> BoxplotStats:
    """Tukey boxplot summary with type-7 (linear interpolation) quartiles.

    With ``common_axis`` the data are first mapped affinely so that the
    minimum goes to 0 and the maximum to 1.
    """
    x = np.asarray(data, dtype=float).ravel()
    if x.size < 5:
        raise InsufficientDataError(f"boxplot needs at least 5 values, got {x.size}")
    offset, factor = 0.0, 1.0
    if common_axis:
        x, offset, factor = common_axis_rescale(x)
    q1, med, q3 = (float(v) for v in np.percentile(x, [25, 50, 75]))
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = x[(x >= lo_fence) & (x <= hi_fence)]
    outliers = sorted(float(v) for v in x[(x < lo_fence) | (x > hi_fence)])
    return BoxplotStats(
        median=med, q1=q1, q3=q3,
        whisker_low=float(inside.min()), whisker_high=float(inside.max()),
        outliers=outliers, rescale_offset=offset, rescale_factor=factor, n=int(x.size),
    )


def residuals_from_raw(x, y, config: LoessConfig | None = None,
                       zero_policy: str = "error") -> ResidualSet:
    """Smooth ``y`` on ``x`` with loess and return its fitted values and residuals."""
    fit = loess_fit(x, y, config)
    return ResidualSet(fit.fitted_in_input_order(), fit.residuals_in_input_order(),
                       zero_policy=zero_policy)
