"""Seedable Monte Carlo sampling: the independent oracle for every measure.

Streams are built from ``numpy``'s Philox counter-based generator keyed by a
``SeedSequence(seed, spawn_key=(stream_id,))``, so identical ``(seed,
stream_id)`` pairs reproduce bit-identical batches and distinct stream ids
are independent by construction.

Gumbel sampling uses the Marshall-Olkin mixture: draw a positive stable
variable ``S`` with Laplace transform ``exp(-t**(1/theta))`` by the
Chambers-Mallows-Stuck formula, then set ``U_i = exp(-(E_i / S)**(1/theta))``
for i.i.d. standard exponentials ``E_i``.
"""

from dataclasses import dataclass

import numpy as np

from .cond_dist import Mode, as_stress_levels
from .copulas import GumbelCopula, IndependenceCopula
from .errors import DomainError, InsufficientSampleError

#: samples are clamped into the open unit interval at this distance
_OPEN_EPS = 1e-15


@dataclass(frozen=True)
class RngSpec:
    """Deterministic stream address: (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def generator(self):
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class SampleBatch:
    """``n x dim`` matrix of copula samples in the open unit cube."""

    u: np.ndarray

    @property
    def n(self):
        return self.u.shape[0]

    @property
    def dim(self):
        return self.u.shape[1]


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_error: float
    n_conditional: int

    def to_dict(self):
        return {"estimate": self.estimate, "std_error": self.std_error,
                "n_conditional": self.n_conditional}


def _positive_stable(gamma, size, gen):
    """Chambers-Mallows-Stuck draw of S with ``E[exp(-tS)] = exp(-t**gamma)``."""
    theta_angle = gen.uniform(-np.pi / 2.0, np.pi / 2.0, size)
    w = gen.standard_exponential(size)
    shifted = gamma * (theta_angle + np.pi / 2.0)
    return (np.sin(shifted) / np.cos(theta_angle) ** (1.0 / gamma)
            * (np.cos(theta_angle - shifted) / w) ** ((1.0 - gamma) / gamma))


def sample(copula, n, rng):
    """Draw ``n`` rows from the copula as a :class:`SampleBatch`."""
    if n < 1:
        raise DomainError(f"sample count must be >= 1, got {n}")
    gen = rng.generator()
    if isinstance(copula, IndependenceCopula):
        u = gen.random((n, copula.dim))
    elif isinstance(copula, GumbelCopula):
        if copula.theta == 1.0:
            u = gen.random((n, copula.dim))
        else:
            gamma = 1.0 / copula.theta
            s = _positive_stable(gamma, n, gen)
            e = gen.standard_exponential((n, copula.dim))
            u = np.exp(-((e / s[:, None]) ** gamma))
    else:
        raise DomainError(
            f"sampling is not supported for family {copula.family!r}")
    np.clip(u, _OPEN_EPS, 1.0 - _OPEN_EPS, out=u)
    return SampleBatch(u=u)


def _condition_mask(u_head, alpha, mode, index):
    alpha_arr = alpha.as_array()
    if mode is Mode.AT_LEAST_ONE:
        return np.any(u_head > alpha_arr, axis=1)
    if mode is Mode.ALL:
        return np.all(u_head > alpha_arr, axis=1)
    return u_head[:, index] > alpha_arr[index]


def _step_quantile(values, beta):
    """Order statistic at ceil(n beta) of an unsorted array, O(n)."""
    n = values.size
    idx = max(int(np.ceil(n * beta)), 1)
    return float(np.partition(values, idx - 1)[idx - 1])


def _step_es(values, beta):
    """Expected shortfall of the empirical step quantile, O(n)."""
    n = values.size
    idx = max(int(np.ceil(n * beta)), 1)
    part = np.partition(values, idx - 1)
    head = part[idx - 1] * (idx / n - beta)
    tail = float(np.sum(part[idx:])) / n if idx < n else 0.0
    return (head + tail) / (1.0 - beta)


def mc_measure(copula, marginal_y, alpha, beta, mode, n, rng,
               statistic="var", n_boot=500, min_hits=1000):
    """Monte Carlo estimate of a conditional risk measure with bootstrap SE.

    ``mode`` selects the conditioning event (:class:`Mode` or its string
    value); ``statistic`` selects the conditional quantile (``"var"``) or the
    conditional tail mean (``"es"``).  Estimates use the same step-quantile
    conventions as :class:`vulnrisk.marginals.EmpiricalMarginal`, so they
    converge to the closed-form measures.

    Raises ``InsufficientSampleError`` when the conditioning event is hit
    fewer than ``min_hits`` times.
    """
    alpha = as_stress_levels(alpha)
    mode = Mode(mode)
    if mode is Mode.SINGLE:
        raise DomainError("single-institution mode needs an index; use "
                          "mode Mode.AT_LEAST_ONE with d=1 instead")
    if not 0.0 < beta < 1.0:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    if statistic not in ("var", "es"):
        raise DomainError(f"statistic must be 'var' or 'es', got {statistic}")
    batch = sample(copula, n, rng)
    d = copula.dim - 1
    mask = _condition_mask(batch.u[:, :d], alpha, mode, None)
    v = batch.u[mask, d]
    if v.size < min_hits:
        raise InsufficientSampleError(
            f"conditioning event hit {v.size} < {min_hits} times "
            f"out of {n} samples")
    y = np.asarray(marginal_y.quantile(v))
    stat = _step_quantile if statistic == "var" else _step_es
    estimate = stat(y, beta)
    boot_gen = rng.generator()
    boot_gen.bit_generator.advance(2 ** 64)  # clear of the sampling draws
    reps = np.empty(n_boot)
    for b in range(n_boot):
        idx = boot_gen.integers(0, y.size, size=y.size)
        reps[b] = stat(y[idx], beta)
    return McEstimate(estimate=estimate,
                      std_error=float(np.std(reps, ddof=1)),
                      n_conditional=int(v.size))
