"""Univariate loss distributions: Pareto and empirical.

Both kinds expose the same surface: ``cdf``, ``survival``, ``quantile`` (the
generalized inverse ``inf{x : F(x) >= t}``), ``quantile_from_survival`` (the
same quantile parameterized by the survival level, which stays accurate far
into the tail where ``1 - t`` is not representable), and
``expected_shortfall``.

Empirical expected shortfall is computed exactly from the step quantile
function -- no interpolation -- so test expectations are deterministic.
"""

import csv

import numpy as np

from .errors import (ConfigError, DivergentIntegralError, DomainError,
                     InfiniteQuantileError)
from .quadrature import DEFAULT_QUAD, exp_tail_integral


class Marginal:
    """Common interface for univariate loss distributions."""

    def cdf(self, x):
        raise NotImplementedError

    def survival(self, x):
        raise NotImplementedError

    def quantile(self, t):
        """Generalized inverse ``inf{x : F(x) >= t}`` for ``t`` in (0, 1]."""
        raise NotImplementedError

    def quantile_from_survival(self, eps):
        """``quantile(1 - eps)`` evaluated stably for tiny ``eps > 0``."""
        raise NotImplementedError

    def expected_shortfall(self, beta):
        """``(1/(1-beta)) * integral_beta^1 quantile(t) dt`` for beta in [0, 1)."""
        raise NotImplementedError

    def tail_quantile_integral(self, p):
        """``integral_p^1 quantile(t) dt`` for ``p`` in [0, 1)."""
        raise NotImplementedError


class ParetoMarginal(Marginal):
    """Pareto loss with shape ``a > 0`` and scale ``k > 0``.

    Survival function ``(k/x)**a`` on ``(k, inf)``; the cdf is 0 at and below
    ``k``.  Expected shortfall requires ``a > 1``.
    """

    def __init__(self, a, k):
        a, k = float(a), float(k)
        if not a > 0.0:
            raise DomainError(f"Pareto shape must be positive, got {a}")
        if not k > 0.0:
            raise DomainError(f"Pareto scale must be positive, got {k}")
        self.a = a
        self.k = k

    @property
    def kind(self):
        return "pareto"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.where(x > self.k, x, self.k)
        out = np.where(x > self.k,
                       -np.expm1(self.a * np.log(self.k / safe)), 0.0)
        return out if out.shape else float(out)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x > self.k, (self.k / np.where(x > self.k, x, self.k))
                       ** self.a, 1.0)
        return out if out.shape else float(out)

    def quantile(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0.0) or np.any(t > 1.0):
            raise DomainError("quantile level must lie in (0, 1]")
        if np.any(t == 1.0):
            raise InfiniteQuantileError(
                "Pareto quantile at level 1 is infinite")
        out = self.k * (1.0 - t) ** (-1.0 / self.a)
        return out if out.shape else float(out)

    def quantile_from_survival(self, eps):
        eps = np.asarray(eps, dtype=float)
        if np.any(eps <= 0.0) or np.any(eps > 1.0):
            raise InfiniteQuantileError(
                "survival level must lie in (0, 1] for an unbounded support")
        out = self.k * eps ** (-1.0 / self.a)
        return out if out.shape else float(out)

    def expected_shortfall(self, beta):
        beta = float(beta)
        if not 0.0 <= beta < 1.0:
            raise DomainError("expected shortfall level must lie in [0, 1)")
        if self.a <= 1.0:
            raise DivergentIntegralError(
                f"Pareto expected shortfall diverges for shape {self.a} <= 1")
        return self.a / (self.a - 1.0) * self.k * (1.0 - beta) ** (-1.0 / self.a)

    def tail_quantile_integral(self, p):
        return (1.0 - p) * self.expected_shortfall(p)

    def __repr__(self):
        return f"ParetoMarginal(a={self.a}, k={self.k})"


class EmpiricalMarginal(Marginal):
    """Step distribution putting mass ``1/n`` on each sample."""

    def __init__(self, samples):
        x = np.sort(np.asarray(samples, dtype=float))
        if x.size < 1:
            raise DomainError("empirical marginal needs at least one sample")
        if not np.all(np.isfinite(x)):
            raise DomainError("empirical samples must be finite")
        self.samples = x
        self.n = x.size

    @property
    def kind(self):
        return "empirical"

    def cdf(self, x):
        out = np.searchsorted(self.samples, np.asarray(x, dtype=float),
                              side="right") / self.n
        return out if out.shape else float(out)

    def survival(self, x):
        out = 1.0 - self.cdf(np.asarray(x, dtype=float))
        return out if out.shape else float(out)

    def quantile(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= 0.0) or np.any(t > 1.0):
            raise DomainError("quantile level must lie in (0, 1]")
        idx = np.ceil(self.n * t).astype(int)
        out = self.samples[np.clip(idx, 1, self.n) - 1]
        return out if out.shape else float(out)

    def quantile_from_survival(self, eps):
        eps = np.asarray(eps, dtype=float)
        if np.any(eps < 0.0) or np.any(eps > 1.0):
            raise DomainError("survival level must lie in [0, 1]")
        # ceil(n (1 - eps)) = n - floor(n eps) away from integer n*eps
        idx = self.n - np.floor(self.n * eps).astype(int)
        frac = self.n * eps
        idx = np.where(frac == np.floor(frac), self.n - frac.astype(int), idx)
        out = self.samples[np.clip(idx, 1, self.n) - 1]
        return out if out.shape else float(out)

    def expected_shortfall(self, beta):
        beta = float(beta)
        if not 0.0 <= beta < 1.0:
            raise DomainError("expected shortfall level must lie in [0, 1)")
        return self.tail_quantile_integral(beta) / (1.0 - beta)

    def tail_quantile_integral(self, p):
        """Exact integral of the step quantile over ``[p, 1]``."""
        if not 0.0 <= p < 1.0:
            raise DomainError("integration start must lie in [0, 1)")
        first = int(np.ceil(self.n * p)) if p > 0.0 else 1
        first = max(first, 1)
        # piece containing p, then whole 1/n pieces above it
        total = self.samples[first - 1] * (first / self.n - p)
        if first < self.n:
            total += float(np.sum(self.samples[first:])) / self.n
        return total

    def __repr__(self):
        return f"EmpiricalMarginal(n={self.n})"


def expected_shortfall_quadrature(marginal, beta, spec=DEFAULT_QUAD):
    """Expected shortfall by tail quadrature; independent of the closed form.

    Continuous marginals are integrated in survival coordinates via
    :func:`vulnrisk.quadrature.exp_tail_integral`; empirical marginals fall
    back to the exact step sum (Gauss-Legendre on a step function would not
    converge).
    """
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise DomainError("expected shortfall level must lie in [0, 1)")
    if isinstance(marginal, EmpiricalMarginal):
        return marginal.expected_shortfall(beta)
    integral = exp_tail_integral(marginal.quantile_from_survival,
                                 1.0 - beta, spec)
    return integral / (1.0 - beta)


def load_losses_csv(path):
    """Read a single-column CSV with header ``loss`` into a float array."""
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or "loss" not in reader.fieldnames:
            raise ConfigError(f"{path}: expected a column named 'loss'")
        try:
            values = [float(row["loss"]) for row in reader]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: non-numeric loss value") from exc
    if not values:
        raise ConfigError(f"{path}: no loss rows")
    return np.asarray(values)


def marginal_from_spec(spec, base_dir=None):
    """Build a marginal from a config mapping.

    ``{"kind": "pareto", "a": 20, "k": 16}`` or
    ``{"kind": "empirical", "path": "losses.csv"}``; relative paths resolve
    against ``base_dir`` when given.
    """
    if not isinstance(spec, dict):
        raise DomainError("marginal spec must be a mapping")
    kind = spec.get("kind")
    if kind == "pareto":
        missing = [key for key in ("a", "k") if key not in spec]
        if missing:
            raise DomainError(
                f"pareto marginal spec missing field(s): {', '.join(missing)}")
        return ParetoMarginal(a=spec["a"], k=spec["k"])
    if kind == "empirical":
        if "path" not in spec:
            raise DomainError("empirical marginal spec missing field: path")
        path = spec["path"]
        if base_dir is not None:
            import os
            if not os.path.isabs(path):
                path = os.path.join(base_dir, path)
        return EmpiricalMarginal(load_losses_csv(path))
    raise DomainError(
        f"unknown marginal kind {kind!r}; expected 'pareto' or 'empirical'")
