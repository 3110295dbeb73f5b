"""Vulnerability conditional risk measures.

Systemic risk measurement for a target loss ``Y`` under stress events on a
vector of institutions ``X_1..X_d``: VCoVaR/VCoES (at least one institution
stressed), MCoVaR/MCoES (all stressed), the classic single-institution
CoVaR, and the associated absolute and relative contribution measures --
all evaluated through closed-form copula representations, cross-checked by
a seedable Monte Carlo oracle, and backtestable with the multinomial Nass
test.
"""

from .backtest import (ForecastSeries, NassResult, ViolationSummary,
                       backtest_series, level_grid, nass_test,
                       read_forecast_csv, violations)
from .cond_dist import (ConditionalDistortion, ConditionCheck, Mode,
                        StressLevels, as_stress_levels,
                        check_composed_convexity, check_l_condition,
                        check_s_condition, l_ratio, s_ratio, tvar_distortion)
from .copulas import (ArchimedeanCopula, Copula, GumbelCopula,
                      IndependenceCopula, copula_from_spec)
from .errors import (ConfigError, DegenerateEventError, DimensionError,
                     DivergentIntegralError, DomainError,
                     InfiniteQuantileError, InsufficientSampleError,
                     UnsupportedDimensionError, VulnRiskError,
                     ZeroBaselineError)
from .marginals import (EmpiricalMarginal, Marginal, ParetoMarginal,
                        expected_shortfall_quadrature, load_losses_csv,
                        marginal_from_spec)
from .measures import (MeasureReport, MeasureRequest, contributions,
                       covar_single, distortion_risk_measure, mcoes, mcovar,
                       vcoes, vcovar)
from .orders import (Order, OrderVerdict, Witness, numeric_order,
                     pareto_order)
from .quadrature import DEFAULT_QUAD, QuadratureSpec, exp_tail_integral
from .sampling import McEstimate, RngSpec, SampleBatch, mc_measure, sample
from .special import chi2_cdf, regularized_lower_gamma

__version__ = "0.1.0"

__all__ = [
    "ArchimedeanCopula", "Copula", "GumbelCopula", "IndependenceCopula",
    "copula_from_spec",
    "Marginal", "ParetoMarginal", "EmpiricalMarginal",
    "expected_shortfall_quadrature", "load_losses_csv", "marginal_from_spec",
    "ConditionalDistortion", "ConditionCheck", "Mode", "StressLevels",
    "as_stress_levels", "check_composed_convexity", "check_l_condition",
    "check_s_condition", "l_ratio", "s_ratio", "tvar_distortion",
    "MeasureRequest", "MeasureReport", "contributions", "covar_single",
    "distortion_risk_measure", "vcovar", "mcovar", "vcoes", "mcoes",
    "Order", "OrderVerdict", "Witness", "pareto_order", "numeric_order",
    "RngSpec", "SampleBatch", "McEstimate", "sample", "mc_measure",
    "ForecastSeries", "ViolationSummary", "NassResult", "level_grid",
    "violations", "nass_test", "backtest_series", "read_forecast_csv",
    "QuadratureSpec", "DEFAULT_QUAD", "exp_tail_integral",
    "chi2_cdf", "regularized_lower_gamma",
    "VulnRiskError", "ConfigError", "DimensionError", "DomainError",
    "UnsupportedDimensionError", "DegenerateEventError",
    "InfiniteQuantileError", "DivergentIntegralError", "ZeroBaselineError",
    "InsufficientSampleError",
]
