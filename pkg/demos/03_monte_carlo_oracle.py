"""Cross-check the closed-form measures against the sampling oracle.

The closed forms travel through copula algebra, bisection inverses, and
tail quadrature; the oracle travels through none of that, only simulation
and order statistics.  Agreement within bootstrap error on every measure is
the package's strongest end-to-end correctness evidence.

Run:  python3 demos/03_monte_carlo_oracle.py
"""

from vulnrisk import (GumbelCopula, MeasureRequest, ParetoMarginal, RngSpec,
                      mc_measure, mcoes, mcovar, vcoes, vcovar)

copula = GumbelCopula(theta=2.0, dim=3)
marginal = ParetoMarginal(a=9, k=20)
alpha = [0.95, 0.95]
beta = 0.95
n = 10 ** 6

req = MeasureRequest(copula=copula, marginal_y=marginal, alpha=alpha,
                     beta=beta)
cases = [
    ("VCoVaR", vcovar(req), "at_least_one", "var"),
    ("MCoVaR", mcovar(req), "all", "var"),
    ("VCoES", vcoes(req), "at_least_one", "es"),
    ("MCoES", mcoes(req), "all", "es"),
]

print(f"{'measure':>8} | {'closed form':>12} | {'monte carlo':>12} "
      f"| {'std err':>9} | {'z':>6}")
print("-" * 62)
for stream, (name, closed, mode, statistic) in enumerate(cases):
    est = mc_measure(copula, marginal, alpha, beta, mode, n,
                     RngSpec(seed=7, stream_id=stream), statistic=statistic)
    z = (closed - est.estimate) / est.std_error
    print(f"{name:>8} | {closed:12.5f} | {est.estimate:12.5f} "
          f"| {est.std_error:9.5f} | {z:6.2f}")
print(f"\nconditional sample sizes are ~{n} x event probability; "
      "all z-scores should sit inside +-3.")
