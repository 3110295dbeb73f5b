"""Incomplete-gamma kernel and the fractional-dof chi-square cdf."""

import math

import numpy as np
import pytest
from scipy import special as sps

from vulnrisk import DomainError, chi2_cdf, regularized_lower_gamma


class TestChiSquare:
    def test_nu_two_closed_form(self):
        # chi-square with 2 dof is Exp(2): cdf = 1 - exp(-x/2)
        for x in np.linspace(0.01, 50.0, 500):
            assert abs(chi2_cdf(x, 2.0) - (1.0 - math.exp(-x / 2.0))) < 1e-12

    def test_against_scipy_fractional_dof(self):
        for nu in (0.3, 1.0, 1.81, 3.7, 5.7, 20.0):
            for x in np.logspace(-3, 2, 60):
                mine = chi2_cdf(x, nu)
                ref = float(sps.chdtr(nu, x))
                assert mine == pytest.approx(ref, rel=1e-10, abs=1e-13)

    def test_vectorized(self):
        xs = np.array([0.0, 1.0, 5.0])
        out = chi2_cdf(xs, 3.7)
        assert out.shape == (3,)
        assert out[0] == 0.0
        assert np.all(np.diff(out) > 0.0)

    def test_negative_argument_clamps(self):
        assert chi2_cdf(-1.0, 2.0) == 0.0

    def test_bad_dof(self):
        with pytest.raises(DomainError):
            chi2_cdf(1.0, 0.0)


class TestRegularizedGamma:
    def test_against_scipy(self):
        for a in (0.2, 0.925, 1.85, 7.3, 40.0):
            for x in np.logspace(-4, 2.5, 80):
                assert regularized_lower_gamma(a, x) == pytest.approx(
                    float(sps.gammainc(a, x)), rel=1e-10, abs=1e-14)

    def test_boundaries(self):
        assert regularized_lower_gamma(2.0, 0.0) == 0.0
        assert regularized_lower_gamma(2.0, 1e4) == pytest.approx(1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            regularized_lower_gamma(-1.0, 1.0)
        with pytest.raises(DomainError):
            regularized_lower_gamma(1.0, -1.0)

    def test_monte_carlo_gamma_agreement(self):
        # chi-square_nu is Gamma(nu/2, scale 2): compare cdf to a large
        # simulated sample at several abscissae, 3 standard errors
        nu = 3.7
        n = 10 ** 6
        rng = np.random.default_rng(271828)
        draws = 2.0 * rng.standard_gamma(nu / 2.0, size=n)
        for x in (1.0, 2.5, 4.0, 7.0):
            p_hat = float(np.mean(draws <= x))
            se = math.sqrt(p_hat * (1.0 - p_hat) / n)
            assert abs(chi2_cdf(x, nu) - p_hat) < 3.0 * se
