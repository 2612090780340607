"""Deterministic SVG output for boxplot panels and spread-location plots.

SVG is written by hand so that identical inputs give byte-identical files:
no timestamps, no generated ids, every number printed with 6 significant
digits. Elements carry a ``class`` attribute (``box``, ``median``,
``whisker``, ``outlier``, ``point``, ``trend``, ``axis``, ``tick``...) so
they can be counted or styled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

from .diagnostics import BoxplotStats, SpreadLocationData
from .transform import format_power

__all__ = ["PlotSpec", "nice_ticks", "power_axis_label", "render_boxplots",
           "render_spread_location"]


@dataclass(frozen=True)
class PlotSpec:
    width_px: int = 640
    height_px: int = 480
    margins: tuple = (40, 20, 60, 70)  # top, right, bottom, left
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    point_radius_px: float = 2.5

    def __post_init__(self):
        if len(self.margins) != 4 or any(m < 0 for m in self.margins):
            raise ValueError("margins must be four nonnegative integers")
        if self.point_radius_px <= 0:
            raise ValueError("point_radius_px must be positive")
        if self.plot_width <= 0 or self.plot_height <= 0:
            raise ValueError("margins leave no drawable area")

    @property
    def plot_width(self) -> int:
        return self.width_px - self.margins[1] - self.margins[3]

    @property
    def plot_height(self) -> int:
        return self.height_px - self.margins[0] - self.margins[2]


def _fmt(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def _nice_number(x: float, round_: bool) -> float:
    exp = math.floor(math.log10(x))
    f = x / 10.0 ** exp
    if round_:
        nf = 1 if f < 1.5 else 2 if f < 3 else 5 if f < 7 else 10
    else:
        nf = 1 if f <= 1 else 2 if f <= 2 else 5 if f <= 5 else 10
    return nf * 10.0 ** exp


def nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    """Round tick values whose span covers ``[lo, hi]`` (Heckbert's method)."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("tick range must be finite")
    if hi < lo:
        lo, hi = hi, lo
    # ranges below ~1e-9 of the magnitude are roundoff; treat them as constant
    if hi - lo <= 1e-9 * max(abs(lo), abs(hi)) or hi == lo:
        mid = 0.5 * (lo + hi)
        pad = 0.5 if mid == 0 else abs(mid) * 0.1
        lo, hi = mid - pad, mid + pad
    span = _nice_number(hi - lo, False)
    step = _nice_number(span / (count - 1), True)
    first = math.floor(lo / step)
    last = math.ceil(hi / step)
    ticks = [float(f"{k * step:.12g}") for k in range(first, last + 1)]
    if ticks[0] > lo:
        ticks.insert(0, float(f"{(first - 1) * step:.12g}"))
    if ticks[-1] < hi:
        ticks.append(float(f"{(last + 1) * step:.12g}"))
    return ticks


class _Scale:
    def __init__(self, d0, d1, r0, r1):
        self.d0, self.d1, self.r0, self.r1 = d0, d1, r0, r1

    def __call__(self, v):
        return self.r0 + (v - self.d0) * (self.r1 - self.r0) / (self.d1 - self.d0)


class _Doc:
    def __init__(self, spec: PlotSpec):
        self.spec = spec
        self.lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{spec.width_px}" height="{spec.height_px}" '
            f'viewBox="0 0 {spec.width_px} {spec.height_px}">',
            f'<rect class="background" x="0" y="0" width="{spec.width_px}" '
            f'height="{spec.height_px}" fill="white"/>',
        ]

    def add(self, line: str):
        self.lines.append(line)

    def line(self, cls, x1, y1, x2, y2, stroke="black", width=1):
        self.add(f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                 f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{_fmt(width)}"/>')

    def text(self, cls, x, y, content, anchor="middle", rotate=False, size=12):
        transform = f' transform="rotate(-90 {_fmt(x)} {_fmt(y)})"' if rotate else ""
        self.add(f'<text class="{cls}" x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
                 f'font-size="{size}" text-anchor="{anchor}"{transform}>{escape(content)}</text>')

    def finish(self) -> str:
        return "\n".join(self.lines + ["</svg>"]) + "\n"


def _frame(doc: _Doc, yticks, yscale, xticks=None, xscale=None):
    spec = doc.spec
    top, right, bottom, left = spec.margins
    x0, x1 = left, spec.width_px - right
    y0, y1 = top, spec.height_px - bottom
    doc.line("axis", x0, y1, x1, y1)
    doc.line("axis", x0, y0, x0, y1)
    for t in yticks:
        y = yscale(t)
        doc.line("tick", x0 - 5, y, x0, y)
        doc.text("tick-label", x0 - 8, y + 4, _fmt(t), anchor="end", size=10)
    for t in xticks or ():
        x = xscale(t)
        doc.line("tick", x, y1, x, y1 + 5)
        doc.text("tick-label", x, y1 + 18, _fmt(t), size=10)
    if spec.title:
        doc.text("title", (x0 + x1) / 2, top / 2 + 6, spec.title, size=14)
    if spec.x_label:
        doc.text("x-label", (x0 + x1) / 2, spec.height_px - bottom / 4, spec.x_label)
    if spec.y_label:
        doc.text("y-label", left / 4 + 6, (y0 + y1) / 2, spec.y_label, rotate=True)


def render_boxplots(panels: Sequence[tuple[str, BoxplotStats]],
                    spec: PlotSpec | None = None) -> str:
    """Side-by-side boxplots on one shared vertical axis."""
    spec = spec or PlotSpec(title="Absolute residuals, rescaled to a common axis",
                            y_label="rescaled value")
    if not panels:
        raise ValueError("need at least one panel")
    lows = [min([s.whisker_low] + list(s.outliers)) for _, s in panels]
    highs = [max([s.whisker_high] + list(s.outliers)) for _, s in panels]
    yticks = nice_ticks(min(lows), max(highs))
    top, right, bottom, left = spec.margins
    yscale = _Scale(yticks[0], yticks[-1], spec.height_px - bottom, top)

    doc = _Doc(spec)
    _frame(doc, yticks, yscale)
    slot = spec.plot_width / len(panels)
    half = 0.25 * slot
    for i, (label, s) in enumerate(panels):
        cx = left + (i + 0.5) * slot
        doc.add(f'<g class="panel" data-label={quoteattr(label)}>')
        yq1, yq3 = yscale(s.q1), yscale(s.q3)
        doc.add(f'<rect class="box" x="{_fmt(cx - half)}" y="{_fmt(yq3)}" '
                f'width="{_fmt(2 * half)}" height="{_fmt(yq1 - yq3)}" '
                f'fill="#dde6f0" stroke="black" stroke-width="1"/>')
        doc.line("median", cx - half, yscale(s.median), cx + half, yscale(s.median), width=2)
        doc.line("whisker", cx, yq1, cx, yscale(s.whisker_low))
        doc.line("whisker", cx, yq3, cx, yscale(s.whisker_high))
        for v in s.outliers:
            doc.add(f'<circle class="outlier" cx="{_fmt(cx)}" cy="{_fmt(yscale(v))}" '
                    f'r="{_fmt(spec.point_radius_px)}" fill="none" stroke="black"/>')
        doc.text("panel-label", cx, spec.height_px - bottom + 18, label)
        doc.add("</g>")
    return doc.finish()


def power_axis_label(p: float, name: str = "residual") -> str:
    if p == 0:
        return f"log |{name}|"
    if p == 1:
        return f"|{name}|"
    return f"|{name}|^{format_power(p)}"


def render_spread_location(sl: SpreadLocationData, spec: PlotSpec | None = None) -> str:
    """Scatter of transformed absolute residuals on fitted values with the loess trend."""
    if spec is None:
        spec = PlotSpec(title="Spread-location plot", x_label="fitted value",
                        y_label=power_axis_label(sl.p))
    x = [float(v) for v in sl.fitted]
    y = [float(v) for v in sl.transformed_abs_residuals]
    cx = [float(v) for v in sl.trend_curve[:, 0]]
    cy = [float(v) for v in sl.trend_curve[:, 1]]
    xticks = nice_ticks(min(x + cx), max(x + cx))
    yticks = nice_ticks(min(y + cy), max(y + cy))
    top, right, bottom, left = spec.margins
    xscale = _Scale(xticks[0], xticks[-1], left, spec.width_px - right)
    yscale = _Scale(yticks[0], yticks[-1], spec.height_px - bottom, top)

    doc = _Doc(spec)
    _frame(doc, yticks, yscale, xticks, xscale)
    r = _fmt(spec.point_radius_px)
    for xi, yi in zip(x, y):
        doc.add(f'<circle class="point" cx="{_fmt(xscale(xi))}" cy="{_fmt(yscale(yi))}" '
                f'r="{r}" fill="none" stroke="#335577"/>')
    pts = " ".join(f"{_fmt(xscale(a))},{_fmt(yscale(b))}" for a, b in zip(cx, cy))
    doc.add(f'<polyline class="trend" points="{pts}" fill="none" stroke="#b22222" '
            f'stroke-width="2"/>')
    return doc.finish()
