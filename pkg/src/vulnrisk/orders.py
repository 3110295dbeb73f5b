"""Stochastic-order deciders: closed-form Pareto rules and numeric checks.

``pareto_order`` applies exact parameter characterizations for two Pareto
marginals; ``numeric_order`` certifies the defining inequality of each order
on a grid for arbitrary marginals.  Numeric verdicts are grid certificates
only: ``holds`` means no violation beyond ``1e-9``, and failing verdicts
carry a witness (the grid point and the violation magnitude).

Order cheat sheet for ``Pareto(a1, k1)`` vs ``Pareto(a2, k2)``:

* st:   ``a1 >= a2`` and ``k1 <= k2``
* icx:  ``a1, a2 > 1``, ``a1 >= a2`` and mean1 <= mean2
        (single survival crossing plus ordered means)
* disp: ``a1 >= a2`` and ``a1 k2 >= a2 k1``
* star: ``a1 >= a2``
* eps:  ``a1 >= a2`` (implied by star for positive risks)
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .marginals import EmpiricalMarginal, ParetoMarginal
from .quadrature import DEFAULT_QUAD, exp_tail_integral

#: numeric certification tolerance: a verdict "holds" admits violations up
#: to this magnitude (grid noise), nothing more
NUMERIC_TOL = 1e-9

#: quantile levels where VaR is treated as zero for ratio-based orders
_ZERO_VAR_TOL = 1e-12


class Order(str, enum.Enum):
    ST = "st"
    ICX = "icx"
    DISP = "disp"
    STAR = "star"
    EPS = "eps"


@dataclass(frozen=True)
class Witness:
    """Location (grid argument) and magnitude of the worst violation."""

    where: float
    magnitude: float


@dataclass(frozen=True)
class OrderVerdict:
    order: Order
    holds: bool
    witness: Optional[Witness] = None
    vacuous: bool = False

    def to_dict(self):
        out = {"order": self.order.value, "holds": self.holds,
               "vacuous": self.vacuous}
        if self.witness is not None:
            out["witness"] = {"where": self.witness.where,
                              "magnitude": self.witness.magnitude}
        return out


def _verdict(order, violations, args, vacuous=False):
    """Build a verdict from signed violations (positive = violated)."""
    violations = np.asarray(violations, dtype=float)
    if violations.size == 0:
        return OrderVerdict(order, holds=True, vacuous=True)
    worst = int(np.nanargmax(violations))
    if violations[worst] <= NUMERIC_TOL:
        return OrderVerdict(order, holds=True, vacuous=vacuous)
    return OrderVerdict(order, holds=False, vacuous=vacuous,
                        witness=Witness(where=float(np.asarray(args)[worst]),
                                        magnitude=float(violations[worst])))


# -- closed-form Pareto rules -------------------------------------------------

def _pareto_stop_loss(m, t):
    """``E[(Y - t)_+]`` in closed form (inf for shape <= 1)."""
    if m.a <= 1.0:
        return math.inf
    mean = m.a * m.k / (m.a - 1.0)
    if t <= m.k:
        return mean - t
    return m.k ** m.a * t ** (1.0 - m.a) / (m.a - 1.0)


def _pareto_witness(order, m1, m2):
    """Locate a violation analytically; the rules are iffs, so one exists."""
    a1, k1, a2, k2 = m1.a, m1.k, m2.a, m2.k
    if order is Order.ST:
        if k1 > k2:
            x = 0.5 * (k1 + k2)  # below supp(m1), inside supp(m2)
            return Witness(where=x, magnitude=1.0 - (k2 / x) ** a2)
        # tails cross once; step past the crossing point
        x_cross = math.exp((a2 * math.log(k2) - a1 * math.log(k1))
                           / (a2 - a1))
        x = max(2.0 * x_cross, 2.0 * max(k1, k2))
        return Witness(where=x, magnitude=(k1 / x) ** a1 - (k2 / x) ** a2)
    if order is Order.ICX:
        if a1 <= 1.0:
            t = 2.0 * max(k1, k2)
            return Witness(where=t, magnitude=math.inf)
        if a1 < a2:
            # stop-loss curves cross; step past the crossing point
            log_t = (a2 * math.log(k2) - a1 * math.log(k1)
                     + math.log((a1 - 1.0) / (a2 - 1.0))) / (a2 - a1)
            t = max(2.0 * math.exp(log_t), 2.0 * max(k1, k2))
            return Witness(where=t, magnitude=_pareto_stop_loss(m1, t)
                           - _pareto_stop_loss(m2, t))
        # means unordered: compare at t below both supports
        return Witness(where=0.0, magnitude=a1 * k1 / (a1 - 1.0)
                       - a2 * k2 / (a2 - 1.0))
    if order is Order.DISP:
        spreads = []
        for eps in np.logspace(-3, -14, 12):
            if a1 * k2 < a2 * k1:  # slopes unordered at the left endpoint
                u, v = eps, 2.0 * eps
            else:  # a1 < a2: the heavier right tail spreads faster
                u, v = 1.0 - 2.0 * eps, 1.0 - eps
            gap = (m1.quantile(v) - m1.quantile(u)) \
                - (m2.quantile(v) - m2.quantile(u))
            spreads.append((gap, u))
            if gap > 0.0:
                return Witness(where=u, magnitude=gap)
        gap, u = max(spreads)
        return Witness(where=u, magnitude=gap)
    # star / eps fail only when a1 < a2
    if order is Order.STAR:
        ratio = lambda u: m2.quantile(u) / m1.quantile(u)
        return Witness(where=0.3, magnitude=ratio(0.3) - ratio(0.6))
    if a1 <= 1.0:
        return Witness(where=0.5, magnitude=math.inf)
    return Witness(where=0.5,
                   magnitude=0.5 / (a1 - 1.0) - 0.5 / (a2 - 1.0))


def pareto_order(order, m1, m2):
    """Exact parametric verdict for two Pareto marginals.

    The characterizations are if-and-only-if, so a failing verdict always
    carries an analytically constructed witness (a grid scan could miss
    violations that only appear far in the tail).
    """
    order = Order(order)
    if not isinstance(m1, ParetoMarginal) or not isinstance(m2, ParetoMarginal):
        raise DomainError("pareto_order requires two Pareto marginals")
    a1, k1, a2, k2 = m1.a, m1.k, m2.a, m2.k
    if order is Order.ST:
        holds = a1 >= a2 and k1 <= k2
    elif order is Order.ICX:
        if a2 <= 1.0:
            # the dominating side has identically infinite stop-loss; the
            # defining inequality can neither hold informatively nor fail
            raise DomainError(
                "increasing convex comparison against an infinite-mean "
                "Pareto is not supported")
        holds = (a1 > 1.0 and a1 >= a2
                 and a1 * k1 * (a2 - 1.0) <= a2 * k2 * (a1 - 1.0))
    elif order is Order.DISP:
        holds = a1 >= a2 and a1 * k2 >= a2 * k1
    else:  # star and eps share the shape-only condition
        holds = a1 >= a2
    if holds:
        return OrderVerdict(order, holds=True)
    return OrderVerdict(order, holds=False,
                        witness=_pareto_witness(order, m1, m2))


# -- numeric deciders ---------------------------------------------------------

def _u_grid(grid_n):
    return np.arange(1, grid_n + 1) / (grid_n + 1.0)


def _stop_loss(marginal, t, quad=DEFAULT_QUAD):
    """``E[(Y - t)_+]`` via the tail quantile integral.

    Empirical marginals use the exact step sum; continuous marginals
    integrate the quantile function by tail quadrature.
    """
    p = float(marginal.cdf(t))
    if p >= 1.0:
        return 0.0
    if isinstance(marginal, EmpiricalMarginal):
        tail = marginal.tail_quantile_integral(p)
    else:
        tail = exp_tail_integral(marginal.quantile_from_survival, 1.0 - p,
                                 quad)
    return tail - t * (1.0 - p)


def numeric_order(order, m1, m2, grid_n=64):
    """Grid-certified verdict of ``m1 <= m2`` in the given order."""
    order = Order(order)
    if grid_n < 16:
        raise DomainError("grid_n must be >= 16")
    u = _u_grid(grid_n)
    if order is Order.ST:
        # survival comparison on the union of both quantile grids
        x = np.unique(np.concatenate([m1.quantile(u), m2.quantile(u)]))
        violations = np.asarray(m1.survival(x)) - np.asarray(m2.survival(x))
        return _verdict(order, violations, x)
    if order is Order.DISP:
        q1, q2 = m1.quantile(u), m2.quantile(u)
        d1 = q1[None, :] - q1[:, None]  # q1(v) - q1(u) for u rows, v cols
        d2 = q2[None, :] - q2[:, None]
        upper = np.triu_indices(len(u), k=1)
        return _verdict(order, (d1 - d2)[upper], u[upper[0]])
    if order is Order.STAR:
        q1, q2 = np.asarray(m1.quantile(u)), np.asarray(m2.quantile(u))
        valid = np.abs(q1) > _ZERO_VAR_TOL
        if np.count_nonzero(valid) < 2:
            return OrderVerdict(order, holds=True, vacuous=True)
        ratio = q2[valid] / q1[valid]
        return _verdict(order, -np.diff(ratio), u[valid][:-1])
    if order is Order.ICX:
        # stop-loss transforms compared on both quantile grids plus a point
        # below both supports (where the comparison reduces to the means)
        t = np.unique(np.concatenate([
            m1.quantile(u), m2.quantile(u),
            [min(float(m1.quantile(u[0])), float(m2.quantile(u[0]))) - 1.0]]))
        violations = [_stop_loss(m1, ti) - _stop_loss(m2, ti) for ti in t]
        return _verdict(order, violations, t)
    # EPS: expected proportional shortfall on levels where both VaRs are
    # nonzero (levels with a zero VaR are outside the order's domain)
    q1, q2 = np.asarray(m1.quantile(u)), np.asarray(m2.quantile(u))
    valid = (np.abs(q1) > _ZERO_VAR_TOL) & (np.abs(q2) > _ZERO_VAR_TOL)
    if not np.any(valid):
        return OrderVerdict(order, holds=True, vacuous=True)
    violations = []
    for p, v1, v2 in zip(u[valid], q1[valid], q2[valid]):
        eps1 = _stop_loss(m1, v1) / v1
        eps2 = _stop_loss(m2, v2) / v2
        violations.append(eps1 - eps2)
    return _verdict(order, violations, u[valid], vacuous=False)
