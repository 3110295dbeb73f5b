"""Violation-based backtesting and the multinomial Nass test.

A forecast series carries, per time step, whether the stress condition
occurred, the realized loss, and ``m`` conditional-VaR forecasts at the
levels ``beta_j = beta + (j-1)(1-beta)/m``, ``j = 1..m``.  Restricting to
conditional rows, the violation count ``Z_t`` (how many forecast levels the
loss exceeded) is multinomial with cell probabilities ``beta_{j+1} - beta_j``
under correct calibration, using the boundary convention ``beta_0 = 0`` and
``beta_{m+1} = 1``; the first cell probability is therefore ``beta`` itself
and the remaining ``m`` cells have probability ``(1-beta)/m`` each.

The Nass statistic rescales the (m+1)-cell Pearson sum

    S_m = sum_j (O_j - N p_j)^2 / (N p_j),      j = 0..m

by ``c = 2 E[S_m] / var[S_m]`` with ``E[S_m] = m`` and

    var[S_m] = 2m - (m^2 + 4m + 1)/N + (1/N) sum_j 1/p_j,

and compares ``c S_m`` against a chi-square with ``nu = c m`` (fractional)
degrees of freedom.  The factor 2 makes both moments of ``c S_m`` match the
chi-square target (``E = nu`` and ``var = 2 nu``); without it the reference
distribution would carry twice the statistic's variance and the test would
reject at roughly half the intended rate.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .special import chi2_cdf


@dataclass(frozen=True)
class ForecastSeries:
    """Aligned arrays of time index, condition flag, loss, and forecasts."""

    t: np.ndarray
    condition_met: np.ndarray
    y: np.ndarray
    forecasts: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t)
        cond = np.asarray(self.condition_met, dtype=bool)
        y = np.asarray(self.y, dtype=float)
        f = np.asarray(self.forecasts, dtype=float)
        if f.ndim != 2:
            raise DomainError("forecasts must be a 2-d array (rows x levels)")
        if not (t.shape[0] == cond.shape[0] == y.shape[0] == f.shape[0]):
            raise DomainError("series columns must have equal length")
        if f.shape[1] < 1:
            raise DomainError("at least one forecast level is required")
        if np.any(np.diff(f, axis=1) < 0.0):
            raise DomainError(
                "forecasts must be nondecreasing across levels in every row")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "condition_met", cond)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "forecasts", f)

    @property
    def m(self):
        return self.forecasts.shape[1]


@dataclass(frozen=True)
class ViolationSummary:
    """Per-level indicators and violation counts on the conditional rows."""

    indicators: np.ndarray
    z: np.ndarray
    violation_rate: float
    n_conditional: int


@dataclass(frozen=True)
class NassResult:
    n: int
    o: tuple
    s_m: float
    c: float
    nu: float
    p_value: float

    def to_dict(self):
        return {"N": self.n, "O": list(self.o), "S_m": self.s_m,
                "c": self.c, "nu": self.nu, "p_value": self.p_value}


def level_grid(beta, m):
    """The ``m`` forecast levels ``beta_j = beta + (j-1)(1-beta)/m``."""
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    j = np.arange(1, m + 1)
    return beta + (j - 1) / m * (1.0 - beta)


def violations(series):
    """Violation indicators ``y > forecast`` restricted to conditional rows."""
    mask = series.condition_met
    if not np.any(mask):
        raise DomainError("no rows satisfy the stress condition")
    y = series.y[mask]
    forecasts = series.forecasts[mask]
    indicators = y[:, None] > forecasts
    z = np.sum(indicators, axis=1).astype(int)
    return ViolationSummary(indicators=indicators,
                            z=z,
                            violation_rate=float(np.mean(indicators[:, 0])),
                            n_conditional=int(y.size))


def nass_test(z, beta, m):
    """Multinomial Nass test of the violation counts ``z``.

    ``z`` holds one count in ``{0, ..., m}`` per conditional observation.
    """
    z = np.asarray(z, dtype=int)
    if z.ndim != 1 or z.size < 1:
        raise DomainError("z must be a nonempty 1-d array of counts")
    if np.any(z < 0) or np.any(z > m):
        raise DomainError(f"violation counts must lie in [0, {m}]")
    levels = level_grid(beta, m)
    bounds = np.concatenate([[0.0], levels, [1.0]])
    probs = np.diff(bounds)
    if np.any(probs <= 0.0):
        raise DomainError("degenerate cell probabilities; beta too extreme")
    n = z.size
    observed = np.bincount(z, minlength=m + 1).astype(float)
    expected = n * probs
    s_m = float(np.sum((observed - expected) ** 2 / expected))
    variance = 2.0 * m - (m * m + 4.0 * m + 1.0) / n + np.sum(1.0 / probs) / n
    if variance <= 0.0:
        raise DomainError("Nass variance is not positive; sample too small")
    c = 2.0 * m / variance  # matches both chi-square moments simultaneously
    nu = c * m
    p_value = 1.0 - chi2_cdf(c * s_m, nu)
    return NassResult(n=n, o=tuple(int(v) for v in observed), s_m=s_m,
                      c=float(c), nu=float(nu), p_value=float(p_value))


def backtest_series(series, beta):
    """End-to-end: violations, then the Nass test at the series' ``m``.

    Returns ``(ViolationSummary, NassResult)``.
    """
    summary = violations(series)
    result = nass_test(summary.z, beta, series.m)
    return summary, result


def read_forecast_csv(path):
    """Parse ``t,condition_met,y,f1,...,fm`` rows into a ForecastSeries."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty file") from None
        expected_prefix = ["t", "condition_met", "y"]
        if [h.strip() for h in header[:3]] != expected_prefix:
            raise ConfigError(
                f"{path}: header must start with t,condition_met,y")
        m = len(header) - 3
        if m < 1:
            raise ConfigError(f"{path}: no forecast columns f1..fm found")
        for j, name in enumerate(header[3:], start=1):
            if name.strip() != f"f{j}":
                raise ConfigError(
                    f"{path}: forecast column {j} must be named f{j}, "
                    f"got {name!r}")
        t_col, cond_col, y_col, f_rows = [], [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3 + m:
                raise ConfigError(
                    f"{path}:{lineno}: expected {3 + m} fields, "
                    f"got {len(row)}")
            try:
                t_col.append(int(row[0]))
                flag = int(row[1])
                if flag not in (0, 1):
                    raise ValueError
                cond_col.append(bool(flag))
                y_col.append(float(row[2]))
                f_rows.append([float(v) for v in row[3:]])
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: malformed row {row!r}") from None
    if not t_col:
        raise ConfigError(f"{path}: no data rows")
    return ForecastSeries(t=np.asarray(t_col),
                          condition_met=np.asarray(cond_col),
                          y=np.asarray(y_col),
                          forecasts=np.asarray(f_rows))
