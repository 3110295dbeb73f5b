"""Parsing and validation of beta-sweep CSV artifacts."""

import csv
from dataclasses import dataclass, field

import numpy as np


class PlotError(Exception):
    """Base error for artifact parsing and rendering."""


class MissingColumnError(PlotError):
    """A requested measure has no matching column; the message names it."""


@dataclass
class SweepFrame:
    """A parsed sweep CSV: a beta axis plus named measure columns.

    Two-scenario sweeps carry suffixed columns (``vcovar_1``, ``vcovar_2``);
    single-scenario sweeps carry bare names.  ``series_for`` resolves a
    measure name to the list of (label, values) curves to draw.
    """

    betas: np.ndarray
    columns: dict = field(repr=False)

    @classmethod
    def from_csv(cls, path):
        try:
            with open(path, newline="") as handle:
                reader = csv.reader(handle)
                try:
                    header = next(reader)
                except StopIteration:
                    raise PlotError(f"{path}: empty file") from None
                rows = [row for row in reader if row]
        except OSError as exc:
            raise PlotError(f"cannot read {path}: {exc}") from exc
        if not header or header[0] != "beta":
            raise MissingColumnError(
                f"{path}: first column must be 'beta', got "
                f"{header[0] if header else 'nothing'!r}")
        if not rows:
            raise PlotError(f"{path}: no data rows")
        try:
            data = np.asarray([[float(v) for v in row] for row in rows])
        except ValueError as exc:
            raise PlotError(f"{path}: non-numeric cell: {exc}") from exc
        if data.shape[1] != len(header):
            raise PlotError(f"{path}: ragged rows")
        betas = data[:, 0]
        if np.any(np.diff(betas) <= 0.0):
            raise PlotError(f"{path}: beta column must be strictly increasing")
        columns = {name: data[:, i] for i, name in enumerate(header[1:],
                                                             start=1)}
        return cls(betas=betas, columns=columns)

    @property
    def n_scenarios(self):
        return 2 if any(name.endswith("_2") for name in self.columns) else 1

    def series_for(self, measure):
        """(label, values) curves for one measure, one per scenario."""
        if measure in self.columns:
            return [(measure, self.columns[measure])]
        suffixed = [f"{measure}_{i}" for i in (1, 2)]
        found = [(name, self.columns[name]) for name in suffixed
                 if name in self.columns]
        if not found:
            raise MissingColumnError(
                f"no column for measure '{measure}' (looked for '{measure}', "
                f"{', '.join(repr(s) for s in suffixed)})")
        return found
