"""Figure construction from parsed artifacts.

Both renderers return ``(figure, data)`` where ``data`` is extracted back
out of the matplotlib artists after plotting.  Callers can therefore verify
properties of the *rendered* series (curve ordering, bar heights) before
any rasterization happens, and only then save the figure.
"""

import json
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweepframe import PlotError, SweepFrame


@dataclass(frozen=True)
class PanelData:
    """One rendered panel: the measure name and its drawn line series."""

    measure: str
    series: tuple  # of (label, xdata, ydata)


def render_sweep(csv_path, measures, title=None):
    """Build a figure with one panel per measure from a sweep CSV.

    Returns ``(figure, panels)`` with the panel series read back from the
    drawn ``Line2D`` artists.  Raises :class:`MissingColumnError` for an
    unknown measure and :class:`PlotError` for an empty measure list.
    """
    if not measures:
        raise PlotError("at least one measure must be requested")
    frame = SweepFrame.from_csv(csv_path)
    fig, axes = plt.subplots(1, len(measures),
                             figsize=(5.2 * len(measures), 4.0),
                             squeeze=False)
    panels = []
    for ax, measure in zip(axes[0], measures):
        for label, values in frame.series_for(measure):
            ax.plot(frame.betas, values, label=label)
        ax.set_xlabel("beta")
        ax.set_ylabel(measure)
        ax.legend()
        ax.grid(True, alpha=0.3)
        rendered = tuple(
            (line.get_label(), np.asarray(line.get_xdata()),
             np.asarray(line.get_ydata()))
            for line in ax.get_lines())
        panels.append(PanelData(measure=measure, series=rendered))
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return fig, panels


def render_backtest(json_path, title=None):
    """Bar chart of observed vs expected violation-count cells.

    The JSON artifact must carry ``N``, ``O``, ``p_value``, ``beta`` and
    ``m`` (as produced by the CLI backtest subcommand).  Returns
    ``(figure, data)`` with the rendered bar heights.
    """
    try:
        with open(json_path) as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise PlotError(f"cannot read {json_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PlotError(f"{json_path}: malformed JSON: {exc}") from exc
    missing = [key for key in ("N", "O", "p_value", "beta", "m")
               if key not in payload]
    if missing:
        raise PlotError(
            f"{json_path}: missing field(s): {', '.join(missing)}")
    n = payload["N"]
    observed = np.asarray(payload["O"], dtype=float)
    beta, m = float(payload["beta"]), int(payload["m"])
    if observed.size != m + 1:
        raise PlotError(f"{json_path}: O must have m+1 = {m + 1} cells")
    levels = beta + (np.arange(1, m + 1) - 1) / m * (1.0 - beta)
    probs = np.diff(np.concatenate([[0.0], levels, [1.0]]))
    expected = n * probs

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    cells = np.arange(m + 1)
    width = 0.38
    obs_bars = ax.bar(cells - width / 2, observed, width, label="observed")
    exp_bars = ax.bar(cells + width / 2, expected, width, label="expected")
    ax.set_xlabel("violation count cell")
    ax.set_ylabel("observations")
    ax.set_xticks(cells)
    ax.set_yscale("log")
    ax.legend()
    ax.annotate(f"Nass p-value: {payload['p_value']:.4g}  (N={n})",
                xy=(0.98, 0.98), xycoords="axes fraction",
                ha="right", va="top")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    data = {
        "observed": np.asarray([bar.get_height() for bar in obs_bars]),
        "expected": np.asarray([bar.get_height() for bar in exp_bars]),
        "p_value": payload["p_value"],
    }
    return fig, data
