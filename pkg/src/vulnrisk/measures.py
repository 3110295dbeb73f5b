"""Vulnerability and multivariate conditional risk measures.

Point measures come from composing the marginal quantile with the inverse
conditional distortion:

* ``vcovar`` -- quantile of ``Y`` given at least one stressed institution.
* ``mcovar`` -- quantile of ``Y`` given all institutions stressed.
* ``covar_single`` -- classic CoVaR against a single institution.

Tail measures (``vcoes`` / ``mcoes``) average the corresponding point measure
over levels ``[beta, 1)``.  For continuous marginals the integral runs in
survival coordinates through :func:`vulnrisk.quadrature.exp_tail_integral`,
which keeps heavy Pareto tails accurate to the requested relative tolerance;
for empirical marginals the integral collapses to an exact finite sum over
the quantile steps, so no quadrature error enters at all.

``contributions`` assembles the full report of spillover deltas against the
unconditional baseline (``delta_*``) and against per-institution CoVaR
baselines (``delta_i_*``).  All functions are pure; a beta sweep can safely
evaluate levels from multiple threads.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .cond_dist import ConditionalDistortion, as_stress_levels
from .errors import (DimensionError, DivergentIntegralError, DomainError,
                     ZeroBaselineError)
from .marginals import EmpiricalMarginal, ParetoMarginal
from .quadrature import DEFAULT_QUAD, exp_tail_integral


@dataclass(frozen=True)
class MeasureRequest:
    """One measurement scenario: copula, target marginal, stress levels, beta."""

    copula: object
    marginal_y: object
    alpha: object
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_stress_levels(self.alpha))
        if self.copula.dim != len(self.alpha) + 1:
            raise DimensionError(
                f"copula dim {self.copula.dim} does not match "
                f"{len(self.alpha)} stress levels + 1")
        if not 0.0 < self.beta < 1.0:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta}")


@dataclass(frozen=True)
class MeasureReport:
    """All measures and contribution deltas at one ``(alpha, beta)``."""

    var: float
    es: float
    vcovar: float
    mcovar: float
    vcoes: float
    mcoes: float
    delta_vcovar: float
    delta_r_vcovar: float
    delta_vcoes: float
    delta_r_vcoes: float
    delta_i_vcovar: tuple
    delta_i_r_vcovar: tuple

    def to_dict(self):
        out = {field: getattr(self, field)
               for field in ("var", "es", "vcovar", "mcovar", "vcoes",
                             "mcoes", "delta_vcovar", "delta_r_vcovar",
                             "delta_vcoes", "delta_r_vcoes")}
        out["delta_i_vcovar"] = list(self.delta_i_vcovar)
        out["delta_i_r_vcovar"] = list(self.delta_i_r_vcovar)
        return out


def _dist(req, mode, index=None):
    if mode == "at_least_one":
        return ConditionalDistortion.at_least_one(req.copula, req.alpha)
    if mode == "all":
        return ConditionalDistortion.all_exceed(req.copula, req.alpha)
    return ConditionalDistortion.single(req.copula, req.alpha, index)


def vcovar(req):
    """VaR of ``Y`` given at least one institution exceeds its stress level."""
    dist = _dist(req, "at_least_one")
    return float(req.marginal_y.quantile(dist.inverse_cdf(req.beta)))


def mcovar(req):
    """VaR of ``Y`` given every institution exceeds its stress level."""
    dist = _dist(req, "all")
    return float(req.marginal_y.quantile(dist.inverse_cdf(req.beta)))


def covar_single(req, index):
    """Classic CoVaR of ``Y`` against institution ``index`` (0-based)."""
    dist = _dist(req, "single", index)
    return float(req.marginal_y.quantile(dist.inverse_cdf(req.beta)))


def _tail_level_mean(dist, marginal, beta, quad):
    """``(1/(1-beta)) * integral_beta^1 quantile(inverse_cdf(t)) dt``."""
    if isinstance(marginal, EmpiricalMarginal):
        # the target quantile is a step function of the inner level, so the
        # integral is an exact sum of distortion-cdf increments over steps
        bounds = dist.cdf(np.arange(marginal.n + 1) / marginal.n)
        lengths = np.clip(bounds[1:] - np.maximum(bounds[:-1], beta),
                          0.0, None)
        return float(np.sum(marginal.samples * lengths)) / (1.0 - beta)
    if isinstance(marginal, ParetoMarginal) and marginal.a <= 1.0:
        raise DivergentIntegralError(
            f"conditional expected shortfall diverges for Pareto shape "
            f"{marginal.a} <= 1")

    def integrand(eps):
        sigma = dist.inverse_survival(eps)
        return marginal.quantile_from_survival(sigma)

    return exp_tail_integral(integrand, 1.0 - beta, quad) / (1.0 - beta)


def vcoes(req, quad=DEFAULT_QUAD):
    """Expected shortfall of ``Y`` given at least one stressed institution."""
    return _tail_level_mean(_dist(req, "at_least_one"), req.marginal_y,
                            req.beta, quad)


def mcoes(req, quad=DEFAULT_QUAD):
    """Expected shortfall of ``Y`` given all institutions stressed."""
    return _tail_level_mean(_dist(req, "all"), req.marginal_y, req.beta, quad)


def contributions(req, quad=DEFAULT_QUAD):
    """Full :class:`MeasureReport` with every delta and ratio filled in.

    Raises ``ZeroBaselineError`` if a ratio baseline (VaR, ES, or a
    per-institution CoVaR) is zero.
    """
    var = float(req.marginal_y.quantile(req.beta))
    es = float(req.marginal_y.expected_shortfall(req.beta))
    vcv = vcovar(req)
    mcv = mcovar(req)
    vce = vcoes(req, quad)
    mce = mcoes(req, quad)
    if var == 0.0:
        raise ZeroBaselineError("VaR baseline is zero; ratio undefined")
    if es == 0.0:
        raise ZeroBaselineError("ES baseline is zero; ratio undefined")
    delta_i, delta_i_r = [], []
    for i in range(len(req.alpha)):
        base = covar_single(req, i)
        if base == 0.0:
            raise ZeroBaselineError(
                f"CoVaR baseline for institution {i} is zero; ratio undefined")
        delta_i.append(vcv - base)
        delta_i_r.append((vcv - base) / base)
    return MeasureReport(
        var=var, es=es, vcovar=vcv, mcovar=mcv, vcoes=vce, mcoes=mce,
        delta_vcovar=vcv - var,
        delta_r_vcovar=(vcv - var) / var,
        delta_vcoes=vce - es,
        delta_r_vcoes=(vce - es) / es,
        delta_i_vcovar=tuple(delta_i),
        delta_i_r_vcovar=tuple(delta_i_r),
    )


_DISTORTION_ENDPOINT_TOL = 1e-12


def distortion_risk_measure(marginal, h):
    """Distortion risk measure ``integral h(survival)`` over the real line.

    ``h`` must be a distortion function (nondecreasing with ``h(0) = 0`` and
    ``h(1) = 1``); endpoints are checked.  For empirical marginals the
    integral is an exact sum over the survival steps; for Pareto the positive
    axis is integrated adaptively after a log substitution.
    """
    h0, h1 = float(h(0.0)), float(h(1.0))
    if abs(h0) > _DISTORTION_ENDPOINT_TOL or \
            abs(h1 - 1.0) > _DISTORTION_ENDPOINT_TOL:
        raise DomainError(
            f"h is not a distortion function: h(0)={h0}, h(1)={h1}")
    if isinstance(marginal, EmpiricalMarginal):
        return _distortion_empirical(marginal, h)
    if isinstance(marginal, ParetoMarginal):
        return _distortion_pareto(marginal, h)
    raise DomainError(f"unsupported marginal kind {marginal!r}")


def _distortion_empirical(marginal, h):
    x = marginal.samples
    n = marginal.n
    # survival is (n - i)/n on [x_i, x_{i+1}); integrate piecewise exactly,
    # splitting at 0 where the defining integral changes form
    total = 0.0
    if x[0] > 0.0:
        total += x[0]  # h(1) * length of [0, x_0)
    elif x[0] < 0.0:
        pass  # 1 - h(1) = 0 on (-inf, x_0)
    for i in range(n - 1):
        lo, hi = x[i], x[i + 1]
        surv = (n - 1.0 - i) / n
        hval = float(h(surv))
        pos = max(hi, 0.0) - max(lo, 0.0)
        neg = min(hi, 0.0) - min(lo, 0.0)
        total += hval * pos - (1.0 - hval) * neg
    if x[-1] < 0.0:
        total -= (1.0 - float(h(0.0))) * (0.0 - x[-1])
    return total


def _distortion_pareto(marginal, h):
    a, k = marginal.a, marginal.k
    # integral_0^inf h(survival(t)) dt = k + integral_k^inf h((k/t)^a) dt;
    # substitute t = k e^tau so the survival argument never underflows abruptly
    tau_max = 745.0 / a

    def integrand(tau):
        return float(h(math.exp(-a * tau))) * math.exp(tau)

    out = integrate.quad(integrand, 0.0, tau_max, limit=500, full_output=1)
    result = k + k * out[0]
    if not np.isfinite(result):
        raise DivergentIntegralError(
            "distortion risk measure integral did not converge")
    return result
