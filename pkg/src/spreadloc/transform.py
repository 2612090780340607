"""Power transforms of absolute residuals and the skewness of ``|E|^p``.

Theoretical moments of ``B = A^(p)`` are integrated in the untransformed
variable ``a`` against the folded density ``g``; the density of ``B`` itself
is available through :func:`transformed_density` for plotting and checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distributions import ErrorModel, folded_density
from .quadrature import integrate

__all__ = [
    "TABLE_POWERS",
    "TABLE_MODELS",
    "SkewnessResult",
    "apply_power",
    "format_power",
    "parse_power",
    "transformed_density",
    "theoretical_moment",
    "theoretical_skewness",
    "skewness_table",
    "sample_skewness",
    "MomentError",
    "DegenerateSampleError",
]

#: The exponent grid used throughout; 1/3 is the exact cube root.
TABLE_POWERS = (1.0, 0.5, 0.4, 1.0 / 3.0, 0.25, 0.0)

TABLE_MODELS = {
    "gaussian": ErrorModel.gaussian(),
    "t5": ErrorModel.student_t(5),
    "contaminated": ErrorModel.contaminated_normal(0.05, 3.0),
    "laplace": ErrorModel.laplace(),
}


class MomentError(ValueError):
    pass


class DegenerateSampleError(ValueError):
    pass


def apply_power(a, p: float):
    """``a**p`` for ``p != 0`` and ``log(a)`` for ``p == 0``; requires ``a > 0``."""
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("power transform needs strictly positive values")
    out = np.log(arr) if p == 0 else arr ** p
    return float(out) if np.ndim(out) == 0 else out


def parse_power(text: str) -> float:
    """Parse ``"0.5"``, ``"1/3"``, ``"log"`` or ``"0"`` into an exponent."""
    s = text.strip().lower()
    if s in ("log", "ln"):
        return 0.0
    try:
        value = float(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse power {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"power must be finite, got {text!r}")
    return value


def format_power(p: float) -> str:
    if p == 0:
        return "log"
    frac = Fraction(p).limit_denominator(12)
    if frac.denominator != 1 and abs(float(frac) - p) < 1e-12 and frac.denominator in (3, 6, 7, 9, 11, 12):
        return f"{frac.numerator}/{frac.denominator}"
    return f"{p:g}"


def transformed_density(model: ErrorModel, p: float, b):
    """Density of ``B = A^(p)`` at ``b``.

    ``h(b) = |q| b^(q-1) g(b^q)`` with ``q = 1/p``, and ``h(b) = e^b g(e^b)``
    for the log. Points outside the support give 0.
    """
    b = np.asarray(b, dtype=float)
    with np.errstate(all="ignore"):
        if p == 0:
            a = np.exp(b)
            out = a * folded_density(model, a)
            out = np.where(np.isfinite(out), out, 0.0)
        else:
            q = 1.0 / p
            pos = b > 0
            bb = np.where(pos, b, 1.0)
            a = bb ** q
            out = np.where(pos, abs(q) * bb ** (q - 1.0) * folded_density(model, a), 0.0)
            out = np.where(np.isfinite(out), out, 0.0)
    return float(out) if np.ndim(out) == 0 else out


def _check_moment_exists(model: ErrorModel, p: float, k: int) -> None:
    if k not in (1, 2, 3):
        raise ValueError(f"moment order must be 1, 2 or 3, got {k}")
    if p == 0:
        return
    order = p * k
    if model.kind == "student_t" and order >= model.df:
        raise MomentError(
            f"E[|E|^{order:g}] is infinite for a t distribution on {model.df:g} df "
            f"(need p*k < df)")
    if order <= -1:
        raise MomentError(
            f"E[|E|^{order:g}] is infinite because the folded density is positive at 0 "
            f"(need p*k > -1)")


def _split_integral(model, fn, abs_tol, rel_tol):
    # splitting at the scale keeps the singular end and the tail apart
    head = integrate(fn, 0.0, model.scale, abs_tol, rel_tol)
    tail = integrate(fn, model.scale, math.inf, abs_tol, rel_tol)
    return head.value + tail.value, head.error_estimate + tail.error_estimate


def _moment_integral(model: ErrorModel, p: float, k: int, abs_tol: float, rel_tol: float):
    _check_moment_exists(model, p, k)
    if p == 0:
        def integrand(a):
            return np.log(a) ** k * folded_density(model, a)
    else:
        pk = p * k

        def integrand(a):
            return a ** pk * folded_density(model, a)
    return _split_integral(model, integrand, abs_tol, rel_tol)


def theoretical_moment(model: ErrorModel, p: float, k: int,
                       abs_tol: float = 1e-12, rel_tol: float = 1e-10) -> float:
    """Raw moment ``E[B^k]`` of ``B = |E|^(p)``."""
    return _moment_integral(model, p, k, abs_tol, rel_tol)[0]


@dataclass(frozen=True)
class SkewnessResult:
    p: float
    mean_B: float
    var_B: float
    third_central_moment: float
    skewness: float
    quadrature_error_bound: float


def theoretical_skewness(model: ErrorModel, p: float,
                         abs_tol: float = 1e-12, rel_tol: float = 1e-10) -> SkewnessResult:
    """Skewness coefficient of ``|E|^(p)``.

    Works with ``W = (A^p - 1) / p`` (``log A`` at ``p = 0``), an affine
    image of ``B`` that stays well conditioned as ``p -> 0``: the mean of
    ``W`` is integrated first, then its second and third central moments.
    The error bound propagates the quadrature bounds to first order.
    """
    for k in (1, 2, 3):
        _check_moment_exists(model, p, k)

    def w(a):
        la = np.log(a)
        return la if p == 0 else np.expm1(p * la) / p

    mu, e1 = _split_integral(model, lambda a: w(a) * folded_density(model, a),
                               abs_tol, rel_tol)
    c2, e2 = _split_integral(model, lambda a: (w(a) - mu) ** 2 * folded_density(model, a),
                               abs_tol, rel_tol)
    c3, e3 = _split_integral(model, lambda a: (w(a) - mu) ** 3 * folded_density(model, a),
                               abs_tol, rel_tol)
    if not c2 > 0:
        raise MomentError(f"non-positive variance {c2!r} for p={p}")
    skew_w = c3 / c2 ** 1.5
    # a shift error d in mu moves c3 by about -3 c2 d and c2 only to second order
    bound = (e3 + 3.0 * c2 * e1) / c2 ** 1.5 + 1.5 * abs(c3) * e2 / c2 ** 2.5
    if p == 0:
        return SkewnessResult(p, mu, c2, c3, skew_w, bound)
    # B = 1 + p W
    mean_b = 1.0 + p * mu
    var_b = p * p * c2
    mu3_b = p ** 3 * c3
    return SkewnessResult(p, mean_b, var_b, mu3_b, skew_w if p > 0 else -skew_w, bound)


def skewness_table(models=None, powers=TABLE_POWERS) -> dict[str, list[SkewnessResult]]:
    """Theoretical skewness for every (model, power) pair, keyed by model name."""
    if models is None:
        models = TABLE_MODELS
    return {name: [theoretical_skewness(m, p) for p in powers] for name, m in models.items()}


def sample_skewness(data) -> float:
    """Moment coefficient of skewness ``g1 = m3 / m2**1.5`` (no bias correction)."""
    x = np.asarray(data, dtype=float).ravel()
    if x.size < 3:
        raise ValueError("need at least 3 observations")
    d = x - x.mean()
    m2 = np.mean(d * d)
    if m2 == 0 or np.all(x == x[0]):
        raise DegenerateSampleError("all observations are identical")
    m3 = np.mean(d * d * d)
    return float(m3 / m2 ** 1.5)
