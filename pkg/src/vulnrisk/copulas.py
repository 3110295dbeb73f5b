"""Copula families: evaluation, survival evaluation, dependence predicates.

Three families are supported:

* ``IndependenceCopula`` -- the product copula.
* ``GumbelCopula(theta)`` -- Archimedean with generator ``(-log t)**theta``,
  ``theta >= 1``.  Evaluation is done in log space so small arguments and
  large ``theta`` do not overflow ``(-log u)**theta``.
* ``ArchimedeanCopula(psi, psi_inv)`` -- escape hatch for a user-supplied
  generator; no numerical hardening beyond the boundary conventions.

Boundary conventions are enforced exactly: any zero coordinate gives 0, and
coordinates equal to 1 are dropped before evaluation so uniform margins hold
bit-for-bit.

All instances are immutable after construction and evaluation is pure, so
objects are safe to share across threads.
"""

import itertools
import math

import numpy as np

from .errors import DimensionError, DomainError, UnsupportedDimensionError

#: hard cap on dim for survival evaluation (2^dim inclusion-exclusion terms)
SURVIVAL_DIM_CAP = 20

_LTD_TOL = 1e-12
_CONCAVE_TOL = 1e-12


class Copula:
    """Base class; subclasses implement ``_cdf_rows`` and ``last_arg_drop``."""

    def __init__(self, dim):
        if not isinstance(dim, (int, np.integer)) or dim < 2:
            raise DomainError(f"copula dim must be an integer >= 2, got {dim}")
        self.dim = int(dim)

    @property
    def family(self):
        raise NotImplementedError

    # -- evaluation --------------------------------------------------------

    def eval(self, u):
        """C(u) for ``u`` of shape ``(dim,)`` or ``(n, dim)``.

        Returns a float for a single point, a 1-d array for a batch.
        """
        arr = np.asarray(u, dtype=float)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise DimensionError(
                f"expected {self.dim} components, got shape {arr.shape}")
        if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
            raise DomainError("copula arguments must lie in [0, 1]")
        out = self._eval_rows(arr)
        return float(out[0]) if single else out

    def _eval_rows(self, arr):
        out = np.empty(arr.shape[0])
        # exact boundary handling: zeros ground the copula, ones are dropped
        any_zero = np.any(arr == 0.0, axis=1)
        n_active = np.sum(arr < 1.0, axis=1)
        trivial = ~any_zero & (n_active <= 1)
        generic = ~any_zero & ~trivial
        out[any_zero] = 0.0
        if np.any(trivial):
            out[trivial] = np.min(arr[trivial], axis=1)
        if np.any(generic):
            out[generic] = self._cdf_rows(arr[generic])
        return out

    def _cdf_rows(self, arr):
        """Copula cdf on interior rows (no zeros, >= 2 non-unit entries)."""
        raise NotImplementedError

    def eval_survival(self, u):
        """Survival copula via inclusion-exclusion over argument subsets.

        Lower-dimensional margins are obtained by padding the remaining
        arguments with 1.  Cost grows as ``2**dim``; dimensions above
        ``SURVIVAL_DIM_CAP`` are rejected.
        """
        if self.dim > SURVIVAL_DIM_CAP:
            raise UnsupportedDimensionError(
                f"survival evaluation supports dim <= {SURVIVAL_DIM_CAP}, "
                f"got {self.dim}")
        arr = np.asarray(u, dtype=float)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.shape[1] != self.dim:
            raise DimensionError(
                f"expected {self.dim} components, got shape {arr.shape}")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("copula arguments must lie in [0, 1]")
        out = np.empty(arr.shape[0])
        for row in range(arr.shape[0]):
            out[row] = self._survival_point(arr[row])
        return float(out[0]) if single else out

    def _survival_point(self, u):
        if np.any(u == 0.0):
            return 0.0
        total = 1.0
        idx = range(self.dim)
        for k in range(1, self.dim + 1):
            sign = -1.0 if k % 2 else 1.0
            for subset in itertools.combinations(idx, k):
                point = np.ones(self.dim)
                point[list(subset)] = 1.0 - u[list(subset)]
                total += sign * float(self._eval_rows(point[None, :])[0])
        return min(max(total, 0.0), 1.0)

    # -- stable last-argument difference ------------------------------------

    def last_arg_drop(self, u_head, sigma):
        """``C(u_head, 1) - C(u_head, 1 - sigma)``, stable for tiny sigma.

        ``u_head`` has ``dim - 1`` components; ``sigma`` may be a scalar or
        array.  This difference is the building block of every conditional
        survival function in :mod:`vulnrisk.cond_dist`; subclasses override
        it with cancellation-free forms.
        """
        sig = np.asarray(sigma, dtype=float)
        head = np.broadcast_to(np.asarray(u_head, dtype=float),
                               sig.shape + (self.dim - 1,))
        pts_hi = np.concatenate([head, np.ones(sig.shape + (1,))], axis=-1)
        pts_lo = np.concatenate([head, (1.0 - sig)[..., None]], axis=-1)
        flat_hi = self.eval(pts_hi.reshape(-1, self.dim))
        flat_lo = self.eval(pts_lo.reshape(-1, self.dim))
        out = np.asarray(flat_hi - flat_lo).reshape(sig.shape)
        return out if out.shape else float(out)

    # -- dependence predicates ----------------------------------------------

    def is_ltd_last(self, grid_n=32):
        """Check LTD in the last coordinate on a lattice.

        True iff ``C(u) / u[last]`` is nonincreasing in the last coordinate
        (within 1e-12) for every grid profile of the other coordinates.
        """
        if grid_n < 8:
            raise DomainError("grid_n must be >= 8")
        ratios = self._last_axis_values(grid_n, include_zero=False)
        ratios = ratios / (np.arange(1, grid_n + 1) / grid_n)
        diffs = np.diff(ratios, axis=-1)
        return bool(np.all(diffs <= _LTD_TOL))

    def is_componentwise_concave_last(self, grid_n=32):
        """Check concavity in the last coordinate via second differences."""
        if grid_n < 8:
            raise DomainError("grid_n must be >= 8")
        values = self._last_axis_values(grid_n, include_zero=True)
        second = values[..., 2:] - 2.0 * values[..., 1:-1] + values[..., :-2]
        return bool(np.all(second <= _CONCAVE_TOL))

    def _last_axis_values(self, grid_n, include_zero):
        """C on (head-profile grid) x (last-coordinate grid)."""
        head_axis = np.arange(1, grid_n + 1) / grid_n
        if include_zero:
            last_axis = np.arange(0, grid_n + 1) / grid_n
        else:
            last_axis = np.arange(1, grid_n + 1) / grid_n
        heads = np.array(list(itertools.product(head_axis,
                                                repeat=self.dim - 1)))
        n_heads, n_last = heads.shape[0], last_axis.size
        pts = np.empty((n_heads, n_last, self.dim))
        pts[:, :, :-1] = heads[:, None, :]
        pts[:, :, -1] = last_axis[None, :]
        return self.eval(pts.reshape(-1, self.dim)).reshape(n_heads, n_last)


class IndependenceCopula(Copula):
    """Product copula: complete independence."""

    @property
    def family(self):
        return "independence"

    def _cdf_rows(self, arr):
        return np.prod(arr, axis=1)

    def last_arg_drop(self, u_head, sigma):
        sig = np.asarray(sigma, dtype=float)
        out = float(np.prod(u_head)) * sig
        return out if out.shape else float(out)

    def __repr__(self):
        return f"IndependenceCopula(dim={self.dim})"


class GumbelCopula(Copula):
    """Gumbel copula, generator ``(-log t)**theta`` with ``theta >= 1``.

    ``theta == 1`` reduces to independence.  The inner sum is rescaled by its
    largest term before exponentiation, so evaluation never overflows however
    small the arguments or large ``theta``.
    """

    def __init__(self, theta, dim):
        super().__init__(dim)
        theta = float(theta)
        if not theta >= 1.0:
            raise DomainError(f"Gumbel theta must be >= 1, got {theta}")
        self.theta = theta

    @property
    def family(self):
        return "gumbel"

    def _cdf_rows(self, arr):
        t = -np.log(arr)
        biggest = np.max(t, axis=1)
        with np.errstate(under="ignore"):
            scaled = np.sum((t / biggest[:, None]) ** self.theta, axis=1)
            return np.exp(-biggest * scaled ** (1.0 / self.theta))

    def last_arg_drop(self, u_head, sigma):
        head = np.asarray(u_head, dtype=float)
        sig = np.asarray(sigma, dtype=float)
        if np.any(head == 0.0):
            out = np.zeros(sig.shape)
            return out if out.shape else 0.0
        t = -np.log(head)
        biggest = float(np.max(t)) if t.size else 0.0
        if biggest == 0.0:  # all head coordinates are 1
            return sig if sig.shape else float(sig)
        with np.errstate(under="ignore", over="ignore", divide="ignore"):
            scaled_sum = float(np.sum((t / biggest) ** self.theta))
            a_top = biggest * scaled_sum ** (1.0 / self.theta)
            c_head = math.exp(-a_top)
            t_sig = -np.log1p(-sig)  # sigma=1 gives inf, which flows through
            x = (t_sig / biggest) ** self.theta / scaled_sum
            delta = a_top * np.expm1(np.log1p(x) / self.theta)
            out = c_head * (-np.expm1(-delta))
        out = np.where(sig == 0.0, 0.0, out)
        return out if out.shape else float(out)

    def __repr__(self):
        return f"GumbelCopula(theta={self.theta}, dim={self.dim})"


class ArchimedeanCopula(Copula):
    """Archimedean copula with a user-supplied generator.

    ``psi`` must be strictly decreasing on (0, 1] with ``psi(1) == 0`` and
    ``psi_inv`` its (generalized) inverse; both must accept numpy arrays.
    No log-space hardening is applied, so extreme tails are only accurate to
    what the supplied callables deliver.
    """

    def __init__(self, psi, psi_inv, dim):
        super().__init__(dim)
        self.psi = psi
        self.psi_inv = psi_inv

    @property
    def family(self):
        return "archimedean"

    def _cdf_rows(self, arr):
        total = np.sum(self.psi(arr), axis=1)
        return np.clip(self.psi_inv(total), 0.0, 1.0)

    def __repr__(self):
        return f"ArchimedeanCopula(dim={self.dim})"


def copula_from_spec(spec):
    """Build a copula from a config mapping.

    Expected shapes: ``{"family": "independence", "dim": 3}`` or
    ``{"family": "gumbel", "theta": 2.0, "dim": 3}``.  Returns the copula or
    raises ``DomainError`` listing the problem.
    """
    if not isinstance(spec, dict):
        raise DomainError("copula spec must be a mapping")
    family = spec.get("family")
    dim = spec.get("dim")
    if family == "independence":
        return IndependenceCopula(dim=dim)
    if family == "gumbel":
        if "theta" not in spec:
            raise DomainError("gumbel copula spec requires 'theta'")
        return GumbelCopula(theta=spec["theta"], dim=dim)
    raise DomainError(
        f"unknown copula family {family!r}; expected 'independence' or 'gumbel'")
