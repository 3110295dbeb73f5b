"""Stochastic-order deciders: closed-form rules vs numeric certification."""

import numpy as np
import pytest

from vulnrisk import (DomainError, EmpiricalMarginal, Order, ParetoMarginal,
                      numeric_order, pareto_order)

# the worked comparison pairs: (m1, m2, {order: expected verdict})
PAIRS = [
    (ParetoMarginal(20, 16), ParetoMarginal(16, 20),
     {"st": True, "icx": True, "disp": True, "star": True, "eps": True}),
    (ParetoMarginal(4, 5), ParetoMarginal(3, 4),
     {"st": False, "disp": True, "star": True, "eps": True}),
    (ParetoMarginal(4, 3), ParetoMarginal(3, 2),
     {"st": False, "disp": False, "star": True, "eps": True}),
    (ParetoMarginal(9, 20), ParetoMarginal(5, 18),
     {"st": False, "icx": True, "star": True}),
]


class TestParetoRules:
    def test_st_example(self):
        assert pareto_order("st", ParetoMarginal(20, 16),
                            ParetoMarginal(16, 20)).holds

    def test_disp_without_st(self):
        m1, m2 = ParetoMarginal(4, 5), ParetoMarginal(3, 4)
        assert pareto_order("disp", m1, m2).holds
        verdict = pareto_order("st", m1, m2)
        assert not verdict.holds
        assert verdict.witness is not None

    def test_star_without_disp(self):
        m1, m2 = ParetoMarginal(4, 3), ParetoMarginal(3, 2)
        assert pareto_order("star", m1, m2).holds
        assert pareto_order("eps", m1, m2).holds
        assert not pareto_order("disp", m1, m2).holds

    def test_icx_with_equal_means(self):
        # means are 9*20/8 = 5*18/4 = 22.5: the boundary case of the rule
        assert pareto_order("icx", ParetoMarginal(9, 20),
                            ParetoMarginal(5, 18)).holds

    def test_icx_needs_tail_ordering(self):
        # ordered means alone are not enough when the heavier tail is on
        # the wrong side: stop-loss comparison fails far out
        m1, m2 = ParetoMarginal(2, 1), ParetoMarginal(3, 10)
        verdict = pareto_order("icx", m1, m2)
        assert not verdict.holds
        assert verdict.witness is not None

    @pytest.mark.parametrize("m1,m2,expected", PAIRS)
    def test_full_matrix(self, m1, m2, expected):
        for order, should_hold in expected.items():
            assert pareto_order(order, m1, m2).holds is should_hold, order

    def test_requires_pareto(self):
        with pytest.raises(DomainError):
            pareto_order("st", EmpiricalMarginal([1.0]), ParetoMarginal(2, 1))


class TestNumericDeciders:
    def test_reflexive(self):
        m = ParetoMarginal(4, 3)
        for order in Order:
            assert numeric_order(order, m, m).holds

    @pytest.mark.parametrize("m1,m2,expected", PAIRS)
    def test_agrees_with_closed_form(self, m1, m2, expected):
        for order, should_hold in expected.items():
            verdict = numeric_order(order, m1, m2, grid_n=64)
            assert verdict.holds is should_hold, (order, verdict)

    @pytest.mark.parametrize("m1,m2,expected", PAIRS)
    def test_reversed_pairs_fail(self, m1, m2, expected):
        # where m1 < m2 strictly, the reversed comparison must fail
        for order, should_hold in expected.items():
            if not should_hold or order == "eps":
                continue
            if (m1.a, m1.k) == (m2.a, m2.k):
                continue
            verdict = numeric_order(order, m2, m1, grid_n=64)
            assert not verdict.holds, order
            assert verdict.witness is not None

    def test_icx_numeric_example(self):
        assert numeric_order("icx", ParetoMarginal(9, 20),
                             ParetoMarginal(5, 18), grid_n=64).holds

    def test_grid_too_small(self):
        with pytest.raises(DomainError):
            numeric_order("st", ParetoMarginal(2, 1), ParetoMarginal(2, 1),
                          grid_n=8)


class TestHierarchyAndInvariance:
    def test_st_implies_icx(self):
        pairs = [(ParetoMarginal(20, 16), ParetoMarginal(16, 20)),
                 (ParetoMarginal(5, 2), ParetoMarginal(4, 2)),
                 (ParetoMarginal(3, 1), ParetoMarginal(3, 2))]
        for m1, m2 in pairs:
            if pareto_order("st", m1, m2).holds:
                assert pareto_order("icx", m1, m2).holds
                assert numeric_order("icx", m1, m2).holds

    def test_disp_invariant_under_common_shift(self):
        rng = np.random.default_rng(11)
        base1 = np.sort(rng.pareto(4.0, 300) + 1.0) * 5.0
        base2 = np.sort(rng.pareto(3.0, 300) + 1.0) * 4.0
        before = numeric_order("disp", EmpiricalMarginal(base1),
                               EmpiricalMarginal(base2))
        for shift in (-3.0, 10.0):
            after = numeric_order("disp", EmpiricalMarginal(base1 + shift),
                                  EmpiricalMarginal(base2 + shift))
            assert after.holds is before.holds

    def test_empirical_vs_empirical(self):
        # stochastically ordered samples: shifted copies
        x = np.sort(np.random.default_rng(5).lognormal(size=400))
        m1, m2 = EmpiricalMarginal(x), EmpiricalMarginal(x + 1.0)
        assert numeric_order("st", m1, m2).holds
        assert numeric_order("icx", m1, m2).holds
        assert numeric_order("disp", m1, m2).holds

    def test_eps_vacuous_when_var_always_zero(self):
        m = EmpiricalMarginal([0.0, 0.0, 0.0])
        verdict = numeric_order("eps", m, m)
        assert verdict.holds and verdict.vacuous

    def test_star_skips_zero_quantiles(self):
        m1 = EmpiricalMarginal([0.0, 1.0, 2.0, 3.0])
        m2 = EmpiricalMarginal([0.0, 2.0, 4.0, 6.0])
        verdict = numeric_order("star", m1, m2)
        assert verdict.holds
