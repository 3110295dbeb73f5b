"""Quadrature helpers for heavy-tailed integrands.

The integrals in this package all share one shape: a smooth integrand on
``(0, U]`` with a possible power singularity at 0 of the form ``eps**(-1/a)``
with ``a > 1`` (the variable ``eps`` is a survival probability, so the
singular endpoint corresponds to the far tail of a loss distribution).
Substituting ``eps = U * exp(-s)`` turns the power singularity into an
exponentially decaying smooth integrand on ``[0, inf)``::

    integral_0^U f(eps) d eps = integral_0^inf f(U e^-s) U e^-s ds

which composite Gauss-Legendre panels resolve to near machine precision.
Panels are evaluated in vectorized blocks and appended until the estimated
geometric remainder drops below the requested relative tolerance; failure to
decay is reported as divergence.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivergentIntegralError

# Survival probabilities below this are numerically meaningless to extend
# into; any integrand this package produces has long converged (or diverges).
_EPS_FLOOR = 1e-250

#: panels evaluated per vectorized call
_BLOCK = 8


@dataclass(frozen=True)
class QuadratureSpec:
    """Tuning knobs for the tail quadrature.

    Defaults are chosen so every closed-form cross-check in the test suite
    passes with at least two orders of magnitude to spare against the 1e-7
    relative target.
    """

    rel_tol: float = 1e-10
    n_nodes: int = 16
    panel_width: float = 1.0
    max_panels: int = 512


DEFAULT_QUAD = QuadratureSpec()


@lru_cache(maxsize=8)
def _gl_nodes(n):
    # nodes/weights on [0, 1]
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def exp_tail_integral(f, upper, spec=DEFAULT_QUAD):
    """Integrate ``f(eps)`` over ``eps`` in ``(0, upper]``.

    ``f`` must accept a 1-d numpy array of eps values in ``(0, upper]`` and
    return the integrand values.  It may be singular (integrably) at 0.

    Raises
    ------
    DivergentIntegralError
        If panel contributions stop decaying before the relative tolerance
        is met (e.g. a Pareto tail with shape <= 1).
    """
    if upper <= 0.0:
        return 0.0
    nodes, weights = _gl_nodes(spec.n_nodes)
    width = spec.panel_width
    total = 0.0
    last = None
    for start in range(0, spec.max_panels, _BLOCK):
        offsets = (start + np.arange(_BLOCK))[:, None] * width
        s = offsets + nodes[None, :] * width
        eps = upper * np.exp(-s)
        values = f(eps.ravel()).reshape(eps.shape)
        contribs = width * (values * eps) @ weights
        total += float(np.sum(contribs))
        if not np.isfinite(total):
            raise DivergentIntegralError(
                "tail integral produced a non-finite partial sum")
        block = np.abs(contribs)
        if last is not None:
            block = np.concatenate([[last], block])
        decaying = np.all(np.diff(block) <= 0.0) and block[-1] < block[0]
        if decaying:
            ratio = (block[-1] / block[0]) ** (1.0 / (block.size - 1))
            remainder = block[-1] * ratio / max(1.0 - ratio, 1e-12)
            if remainder <= spec.rel_tol * max(abs(total), 1e-300):
                return total
        if eps[-1, -1] < _EPS_FLOOR:
            # Deep past double resolution; if the block mass is already
            # negligible we are done, otherwise the tail genuinely diverges.
            if block[-1] <= spec.rel_tol * max(abs(total), 1e-300):
                return total
            raise DivergentIntegralError(
                "tail integral still carries mass at survival level "
                f"{eps[-1, -1]:.3g}; integrand too heavy-tailed")
        last = float(np.abs(contribs[-1]))
    raise DivergentIntegralError(
        f"tail integral did not converge within {spec.max_panels} panels")


def panel_integral(f, lo, hi, n_nodes=32):
    """Plain Gauss-Legendre integral of a smooth ``f`` over ``[lo, hi]``."""
    if hi <= lo:
        return 0.0
    nodes, weights = _gl_nodes(n_nodes)
    x = lo + (hi - lo) * nodes
    return (hi - lo) * float(np.sum(weights * f(x)))
