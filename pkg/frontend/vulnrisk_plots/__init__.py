"""Plots rendered from vulnrisk CLI artifacts (sweep CSVs, backtest JSON).

This package never recomputes a risk measure: the CLI outputs are the
single source of numerical truth, and everything here is presentation.
"""

from .sweepframe import MissingColumnError, PlotError, SweepFrame
from .plots import PanelData, render_backtest, render_sweep

__all__ = ["SweepFrame", "PlotError", "MissingColumnError", "PanelData",
           "render_sweep", "render_backtest"]
