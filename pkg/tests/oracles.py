"""Brute-force reference computations, kept independent of the package."""

import math

import numpy as np


def wls_loess(x, y, span, degree, iterations):
    """Robust loess by explicit loops and raw-polynomial normal equations.

    Returns the list of fitted-value arrays (one per robustness round, in
    the caller's ordering) and the final robustness weights.
    """
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    r = min(n, max(1, math.ceil(span * n - 1e-12)))
    robust = [1.0] * n
    rounds = []

    def one_pass():
        out = []
        for i in range(n):
            dists = sorted(abs(xj - x[i]) for xj in x)
            d = dists[r - 1]
            if d == 0:
                idx = [j for j in range(n) if x[j] == x[i]]
                ws = sum(robust[j] for j in idx)
                out.append(sum(robust[j] * y[j] for j in idx) / ws if ws > 0
                           else sum(y[j] for j in idx) / len(idx))
                continue
            ws = []
            for j in range(n):
                u = abs(x[j] - x[i]) / d
                ws.append(((1 - u ** 3) ** 3 if u < 1 else 0.0) * robust[j])
            live = {x[j] for j in range(n) if ws[j] > 0}
            if not live:
                # no neighbour carries weight: plain mean of the window
                idx = [j for j in range(n) if abs(x[j] - x[i]) <= d]
                out.append(sum(y[j] for j in idx) / len(idx))
                continue
            deg = min(degree, len(live) - 1)
            A = np.zeros((deg + 1, deg + 1))
            b = np.zeros(deg + 1)
            for j in range(n):
                for a in range(deg + 1):
                    b[a] += ws[j] * y[j] * x[j] ** a
                    for c in range(deg + 1):
                        A[a, c] += ws[j] * x[j] ** (a + c)
            coef = np.linalg.solve(A, b)
            out.append(sum(coef[a] * x[i] ** a for a in range(deg + 1)))
        return out

    fitted = one_pass()
    rounds.append(np.array(fitted))
    tiny = 1e-10 * sum(abs(v) for v in y) / n
    for _ in range(iterations):
        res = [y[i] - fitted[i] for i in range(n)]
        s = float(np.median(np.abs(res)))
        if s <= tiny:
            robust = [1.0] * n
            break
        robust = []
        for e in res:
            u = e / (6 * s)
            robust.append((1 - u * u) ** 2 if abs(u) < 1 else 0.0)
        fitted = one_pass()
        rounds.append(np.array(fitted))
    return rounds, np.array(robust)


def type7_quantile(data, q):
    """Linear-interpolation quantile written out by hand."""
    s = sorted(data)
    h = (len(s) - 1) * q
    lo = math.floor(h)
    hi = min(lo + 1, len(s) - 1)
    return s[lo] + (h - lo) * (s[hi] - s[lo])
