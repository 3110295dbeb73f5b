"""Conditional distortion functions driving every risk measure.

For a ``(d+1)``-dimensional copula of ``(U_1, ..., U_d, V)`` and stress
levels ``alpha`` this module evaluates the distribution of ``V`` conditional
on a stress event:

* ``AT_LEAST_ONE`` -- some ``U_i > alpha_i``:
  ``F(v) = (v - C(alpha, v)) / (1 - C(alpha, 1))``
* ``ALL`` -- every ``U_i > alpha_i``, expressed through the survival copula:
  ``F(v) = 1 - Chat(1-alpha, 1-v) / Chat(1-alpha, 1)``
* ``SINGLE(i)`` -- only ``U_i > alpha_i``:
  ``F(v) = (v - C(alpha*_i, v)) / (1 - alpha_i)`` with ``alpha*_i`` equal to
  1 everywhere except position ``i``.

Each of these is a distortion function (0 at 0, 1 at 1, nondecreasing).
Inversion is by bracketed bisection, which preserves generalized-inverse
semantics even on flat stretches.  For tail integrals the same objects are
evaluated in survival coordinates (``tail_survival`` / ``inverse_survival``)
built on the cancellation-free ``last_arg_drop`` of the copula, so levels far
beyond ``1 - 1e-16`` remain meaningful.

Indices are 0-based throughout (``index=0`` is the first stressed
institution).
"""

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEventError, DimensionError, DomainError

#: absolute tolerance for the bisection inverse (contract allows up to 1e-12)
INVERSE_TOL = 1e-15
_MAX_BISECT = 200
#: log-space bracket floor for survival-coordinate inversion
_LOG_SIGMA_FLOOR = -700.0


@dataclass(frozen=True)
class StressLevels:
    """Vector of stress confidence levels, each in [0, 1)."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 1:
            raise DomainError("at least one stress level is required")
        if any(not 0.0 <= v < 1.0 for v in vals):
            raise DomainError(f"stress levels must lie in [0, 1): {vals}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def as_array(self):
        return np.asarray(self.values)


def as_stress_levels(alpha):
    if isinstance(alpha, StressLevels):
        return alpha
    if np.isscalar(alpha):
        return StressLevels((alpha,))
    return StressLevels(tuple(np.asarray(alpha, dtype=float).ravel()))


class Mode(enum.Enum):
    AT_LEAST_ONE = "at_least_one"
    ALL = "all"
    SINGLE = "single"


@dataclass(frozen=True)
class ConditionCheck:
    """Grid certificate for a theorem hypothesis.

    ``holds`` means no violation beyond ``tol``; ``max_violation`` is the
    largest (signed) excess observed and ``worst_arg`` where it occurred.
    """

    holds: bool
    max_violation: float
    worst_arg: float
    reference: float


class ConditionalDistortion:
    """Distribution of ``V`` given a stress event, as a distortion function."""

    def __init__(self, copula, alpha, mode, index=None):
        alpha = as_stress_levels(alpha)
        if copula.dim != len(alpha) + 1:
            raise DimensionError(
                f"copula dim {copula.dim} does not match "
                f"{len(alpha)} stress levels + 1")
        mode = Mode(mode)
        if mode is Mode.SINGLE:
            if index is None or not 0 <= int(index) < len(alpha):
                raise DomainError(
                    f"single mode needs an index in [0, {len(alpha)})")
            index = int(index)
        elif index is not None:
            raise DomainError("index is only meaningful in single mode")
        self.copula = copula
        self.alpha = alpha
        self.mode = mode
        self.index = index
        self._d = len(alpha)
        self._head = self._head_vector()
        self._heads = self._subset_heads() if mode is Mode.ALL else None
        self._p_event = self._event_probability()
        # the event probability is assembled from O(1) copula values with
        # ~1e-16 absolute error; below this floor the ratio is meaningless
        if not self._p_event > 1e-12:
            raise DegenerateEventError(
                f"conditioning event has probability {self._p_event:.3g}; "
                "the conditional distribution is undefined")

    # -- constructors --------------------------------------------------------

    @classmethod
    def at_least_one(cls, copula, alpha):
        return cls(copula, alpha, Mode.AT_LEAST_ONE)

    @classmethod
    def all_exceed(cls, copula, alpha):
        return cls(copula, alpha, Mode.ALL)

    @classmethod
    def single(cls, copula, alpha, index):
        return cls(copula, alpha, Mode.SINGLE, index=index)

    # -- setup helpers -------------------------------------------------------

    def _head_vector(self):
        if self.mode is Mode.SINGLE:
            head = np.ones(self._d)
            head[self.index] = self.alpha.values[self.index]
            return head
        return self.alpha.as_array()

    def _event_probability(self):
        if self.mode is Mode.AT_LEAST_ONE:
            point = np.append(self.alpha.as_array(), 1.0)
            return 1.0 - self.copula.eval(point)
        if self.mode is Mode.ALL:
            point = np.append(1.0 - self.alpha.as_array(), 1.0)
            return self.copula.eval_survival(point)
        return 1.0 - self.alpha.values[self.index]

    @property
    def event_probability(self):
        """Probability of the conditioning stress event."""
        return self._p_event

    def __repr__(self):
        tag = self.mode.value if self.mode is not Mode.SINGLE \
            else f"single[{self.index}]"
        return f"ConditionalDistortion({self.copula!r}, {tag})"

    def _c_head_v(self, v):
        """C(head, v) for scalar or array v."""
        v = np.asarray(v, dtype=float)
        pts = np.empty(v.shape + (self.copula.dim,))
        pts[..., :-1] = self._head
        pts[..., -1] = v
        flat = self.copula.eval(pts.reshape(-1, self.copula.dim))
        return np.asarray(flat).reshape(v.shape)

    def _subset_heads(self):
        """(sign, head) pairs of the inclusion-exclusion over institutions."""
        alpha = self.alpha.as_array()
        pairs = []
        for k in range(self._d + 1):
            sign = -1.0 if k % 2 else 1.0
            for subset in itertools.combinations(range(self._d), k):
                head = np.ones(self._d)
                head[list(subset)] = alpha[list(subset)]
                pairs.append((sign, head))
        return pairs

    def _joint_tail(self, sigma):
        """P(all U_i > alpha_i, V > 1 - sigma), stable for tiny sigma."""
        sigma = np.asarray(sigma, dtype=float)
        total = np.zeros(sigma.shape)
        for sign, head in self._heads:
            total += sign * np.asarray(self.copula.last_arg_drop(head, sigma))
        return np.clip(total, 0.0, None)

    # -- distortion surface ---------------------------------------------------

    def cdf(self, v):
        """Conditional cdf of ``V``; accepts scalars or arrays in [0, 1]."""
        arr = np.asarray(v, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("distortion argument must lie in [0, 1]")
        if self.mode is Mode.ALL:
            out = 1.0 - self._joint_tail(1.0 - arr) / self._p_event
        else:
            out = (arr - self._c_head_v(arr)) / self._p_event
        out = np.clip(out, 0.0, 1.0)
        return out if out.shape else float(out)

    def tail_survival(self, sigma):
        """``P(V > 1 - sigma | event)`` without forming ``1 - sigma``.

        Accurate for ``sigma`` all the way down to the underflow threshold,
        which the plain ``1 - cdf(v)`` difference is not.
        """
        arr = np.asarray(sigma, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("survival argument must lie in [0, 1]")
        if self.mode is Mode.ALL:
            out = self._joint_tail(arr) / self._p_event
        else:
            drop = np.asarray(self.copula.last_arg_drop(self._head, arr))
            out = (arr - drop) / self._p_event
        out = np.clip(out, 0.0, 1.0)
        return out if out.shape else float(out)

    def inverse_cdf(self, beta, tol=INVERSE_TOL):
        """Generalized inverse ``inf{v : cdf(v) >= beta}`` by bisection."""
        arr = np.asarray(beta, dtype=float)
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError("inverse level must lie in (0, 1)")
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        lo = np.zeros_like(arr)
        hi = np.ones_like(arr)
        for _ in range(_MAX_BISECT):
            if np.max(hi - lo) <= tol:
                break
            mid = 0.5 * (lo + hi)
            ge = self.cdf(mid) >= arr
            hi = np.where(ge, mid, hi)
            lo = np.where(ge, lo, mid)
        else:
            raise DomainError(
                f"bisection failed to reach tolerance {tol} "
                f"in {_MAX_BISECT} iterations")
        return float(hi[0]) if scalar else hi

    def inverse_survival(self, eps, iters=48):
        """Solve ``tail_survival(sigma) = eps`` for sigma, in log space.

        Used by tail quadratures: for ``eps`` near machine resolution the
        returned ``sigma`` keeps full relative precision where ``1 -
        inverse_cdf(1 - eps)`` would collapse to 0.
        """
        arr = np.asarray(eps, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise DomainError("survival level must lie in (0, 1)")
        # tail_survival(sigma) <= sigma / p_event, so the root is at least
        # eps * p_event; bracketing from there keeps the log window short
        lo = np.maximum(np.log(arr * self._p_event), _LOG_SIGMA_FLOOR)
        hi = np.zeros_like(arr)
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            le = self.tail_survival(np.exp(mid)) <= arr
            lo = np.where(le, mid, lo)
            hi = np.where(le, hi, mid)
        out = np.exp(lo)
        return float(out[0]) if scalar else out


def tvar_distortion(t, beta):
    """Tail-value-at-risk distortion ``max(0, (t - beta) / (1 - beta))``."""
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise DomainError("beta must lie in (0, 1)")
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("distortion argument must lie in [0, 1]")
    out = np.maximum(0.0, (arr - beta) / (1.0 - beta))
    return out if out.shape else float(out)


def _numerator(copula, head, v):
    v = np.asarray(v, dtype=float)
    pts = np.empty(v.shape + (copula.dim,))
    pts[..., :-1] = head
    pts[..., -1] = v
    c_val = np.asarray(copula.eval(pts.reshape(-1, copula.dim)))
    return v - c_val.reshape(v.shape)


def l_ratio(c1, c2, alpha, v):
    """``(v - C1(alpha, v)) / (v - C2(alpha, v))`` for v in (0, 1]."""
    alpha = as_stress_levels(alpha)
    if c1.dim != len(alpha) + 1 or c2.dim != len(alpha) + 1:
        raise DimensionError("copula dims must equal len(alpha) + 1")
    arr = np.asarray(v, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError("ratio argument must lie in (0, 1]")
    num = _numerator(c1, alpha.as_array(), arr)
    den = _numerator(c2, alpha.as_array(), arr)
    if np.any(den <= 0.0):
        raise DegenerateEventError(
            "ratio denominator is not positive; the comparison copula "
            "assigns its whole mass to the lower orthant at this level")
    out = num / den
    return out if out.shape else float(out)


def s_ratio(copula, alpha, index, v):
    """``(v - C(alpha, v)) / (v - C(alpha*_i, v))`` for v in (0, 1]."""
    alpha = as_stress_levels(alpha)
    if copula.dim != len(alpha) + 1:
        raise DimensionError("copula dim must equal len(alpha) + 1")
    if not 0 <= int(index) < len(alpha):
        raise DomainError(f"index must lie in [0, {len(alpha)})")
    arr = np.asarray(v, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr > 1.0):
        raise DomainError("ratio argument must lie in (0, 1]")
    head_star = np.ones(len(alpha))
    head_star[int(index)] = alpha.values[int(index)]
    num = _numerator(copula, alpha.as_array(), arr)
    den = _numerator(copula, head_star, arr)
    if np.any(den <= 0.0):
        raise DegenerateEventError("ratio denominator is not positive")
    out = num / den
    return out if out.shape else float(out)


_CONDITION_TOL = 1e-12


def check_l_condition(c1, c2, alpha, grid_n=101, tol=_CONDITION_TOL):
    """Certify ``l(v) >= l(1)`` on a grid (comparison-theorem hypothesis).

    Returns a :class:`ConditionCheck`; ``max_violation`` is the largest
    ``l(1) - l(v)`` observed (positive = violated).
    """
    grid = np.linspace(0.01, 0.99, grid_n)
    values = l_ratio(c1, c2, alpha, grid)
    reference = l_ratio(c1, c2, alpha, 1.0)
    violation = reference - values
    worst = int(np.argmax(violation))
    return ConditionCheck(holds=bool(violation[worst] <= tol),
                          max_violation=float(violation[worst]),
                          worst_arg=float(grid[worst]),
                          reference=float(reference))


def check_s_condition(copula, alpha, index, grid_n=101, tol=_CONDITION_TOL):
    """Certify ``s_i(v) <= s_i(1)`` on a grid (single-baseline hypothesis)."""
    grid = np.linspace(0.01, 0.99, grid_n)
    values = s_ratio(copula, alpha, index, grid)
    reference = s_ratio(copula, alpha, index, 1.0)
    violation = values - reference
    worst = int(np.argmax(violation))
    return ConditionCheck(holds=bool(violation[worst] <= tol),
                          max_violation=float(violation[worst]),
                          worst_arg=float(grid[worst]),
                          reference=float(reference))


def check_composed_convexity(copula, alpha, index, grid_n=101, tol=1e-9):
    """Grid-convexity certificate for the union-given-single composition.

    Checks second differences of ``F_union(F_single^{-1}(.))`` on a uniform
    grid, the hypothesis under which relative single-baseline tail
    contributions become comparable.  No known parametric family satisfies
    it a priori, so callers must gate any ordering claim on this report.
    """
    union = ConditionalDistortion.at_least_one(copula, alpha)
    single = ConditionalDistortion.single(copula, alpha, index)
    grid = np.linspace(0.005, 0.995, grid_n)
    composed = union.cdf(single.inverse_cdf(grid))
    second = composed[2:] - 2.0 * composed[1:-1] + composed[:-2]
    worst = int(np.argmin(second))
    return ConditionCheck(holds=bool(second[worst] >= -tol),
                          max_violation=float(max(-second[worst], 0.0)),
                          worst_arg=float(grid[worst + 1]),
                          reference=0.0)
