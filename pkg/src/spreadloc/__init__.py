"""Spread-location diagnostics with power transforms chosen for symmetry."""

from .datasets import load_demo_raw
from .diagnostics import (BoxplotStats, PowerSelection, ResidualSet, SpreadLocationData,
                          boxplot_stats, fold, monotone_spread_statistic, residuals_from_raw,
                          select_power, spread_location)
from .distributions import ErrorModel, density, folded_density
from .loess import LoessConfig, LoessFit, loess_fit, loess_predict
from .plot import PlotSpec, render_boxplots, render_spread_location
from .quadrature import Integral, integrate
from .transform import (TABLE_MODELS, TABLE_POWERS, SkewnessResult, apply_power,
                        format_power, parse_power, sample_skewness, skewness_table,
                        theoretical_moment, theoretical_skewness, transformed_density)

__version__ = "0.1.0"
