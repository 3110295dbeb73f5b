"""Command-line interface.

Subcommands::

    measure      full MeasureReport for one scenario (JSON)
    sweep        measures over a beta grid for one or two scenarios (CSV)
    oracle       closed-form values vs Monte Carlo estimates (JSON)
    backtest     multinomial Nass backtest of a forecast CSV (JSON)
    order-check  stochastic-order verdict between two marginals (JSON)

Scenario configs are JSON documents (``--config``); ``--seed``, ``--out``
and ``--grid start:stop:step`` override config fields.  All validation
problems in a config are reported together.  Exit codes: 0 success, 2 config
error, 3 numeric error.  Floats are printed with 12 significant digits so
outputs are stable for golden-file comparison.
"""

import argparse
import json
import os
import sys

import numpy as np

from .backtest import backtest_series, read_forecast_csv
from .cond_dist import as_stress_levels
from .copulas import copula_from_spec
from .errors import ConfigError, VulnRiskError
from .marginals import ParetoMarginal, marginal_from_spec
from .measures import MeasureRequest, contributions, mcoes, mcovar, vcoes, vcovar
from .orders import Order, numeric_order, pareto_order
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .sampling import RngSpec, mc_measure

_SWEEP_FIELDS = ("var", "es", "vcovar", "mcovar", "vcoes", "mcoes",
                 "delta_vcovar", "delta_r_vcovar", "delta_vcoes",
                 "delta_r_vcoes")


def _round12(value):
    """Round floats (recursively) to 12 significant digits for output."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit(payload, out_path):
    text = json.dumps(_round12(payload), indent=2)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _load_config(path):
    if path is None:
        raise ConfigError("--config is required for this subcommand")
    try:
        with open(path) as handle:
            return json.load(handle), os.path.dirname(os.path.abspath(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def _build_scenario(cfg, base_dir, errors, label=""):
    """Build (copula, marginal, alpha) collecting all problems into errors."""
    copula = marginal = alpha = None
    if "copula" not in cfg:
        errors.append(f"{label}missing field: copula")
    else:
        try:
            copula = copula_from_spec(cfg["copula"])
        except VulnRiskError as exc:
            errors.append(f"{label}copula: {exc}")
    if "marginal" not in cfg:
        errors.append(f"{label}missing field: marginal")
    else:
        try:
            marginal = marginal_from_spec(cfg["marginal"], base_dir)
        except VulnRiskError as exc:
            errors.append(f"{label}marginal: {exc}")
    if "alpha" not in cfg:
        errors.append(f"{label}missing field: alpha")
    else:
        try:
            alpha = as_stress_levels(cfg["alpha"])
        except (VulnRiskError, TypeError) as exc:
            errors.append(f"{label}alpha: {exc}")
    if copula is not None and alpha is not None \
            and copula.dim != len(alpha) + 1:
        errors.append(f"{label}copula dim {copula.dim} does not match "
                      f"{len(alpha)} stress levels + 1")
    return copula, marginal, alpha


def _quad_from_config(cfg, errors):
    raw = cfg.get("quadrature")
    if raw is None:
        return DEFAULT_QUAD
    try:
        return QuadratureSpec(
            rel_tol=float(raw.get("rel_tol", DEFAULT_QUAD.rel_tol)),
            n_nodes=int(raw.get("n_nodes", DEFAULT_QUAD.n_nodes)),
            panel_width=float(raw.get("panel_width",
                                      DEFAULT_QUAD.panel_width)),
            max_panels=int(raw.get("max_panels", DEFAULT_QUAD.max_panels)))
    except (TypeError, ValueError, AttributeError) as exc:
        errors.append(f"quadrature: {exc}")
        return DEFAULT_QUAD


def _beta_from_config(cfg, errors):
    if "beta" not in cfg:
        errors.append("missing field: beta")
        return None
    try:
        beta = float(cfg["beta"])
    except (TypeError, ValueError):
        errors.append(f"beta must be a number, got {cfg['beta']!r}")
        return None
    if not 0.0 < beta < 1.0:
        errors.append(f"beta must lie in (0, 1), got {beta}")
        return None
    return beta


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"grid values must be numbers: {text!r}") from None
    if step <= 0.0 or stop < start:
        raise ConfigError(f"grid needs step > 0 and stop >= start: {text!r}")
    count = int(round((stop - start) / step))
    betas = start + step * np.arange(count + 1)
    betas = betas[(betas > 0.0) & (betas < 1.0) & (betas <= stop + 1e-12)]
    if betas.size == 0:
        raise ConfigError(f"grid {text!r} produced no levels inside (0, 1)")
    return betas


def cmd_measure(args):
    cfg, base_dir = _load_config(args.config)
    errors = []
    copula, marginal, alpha = _build_scenario(cfg, base_dir, errors)
    beta = _beta_from_config(cfg, errors)
    quad = _quad_from_config(cfg, errors)
    if errors:
        raise ConfigError(errors)
    report = contributions(
        MeasureRequest(copula=copula, marginal_y=marginal,
                       alpha=alpha, beta=beta), quad)
    payload = {"alpha": list(alpha.values), "beta": beta}
    payload.update(report.to_dict())
    _emit(payload, args.out or cfg.get("out"))
    return 0


def _sweep_scenarios(cfg, base_dir, errors):
    if "scenarios" in cfg:
        raw = cfg["scenarios"]
        if not isinstance(raw, list) or not 1 <= len(raw) <= 2:
            errors.append("scenarios must be a list of one or two entries")
            return []
        out = []
        for pos, entry in enumerate(raw, start=1):
            merged = dict(entry)
            if "alpha" not in merged and "alpha" in cfg:
                merged["alpha"] = cfg["alpha"]
            out.append(_build_scenario(merged, base_dir, errors,
                                       label=f"scenario {pos}: "))
        return out
    return [_build_scenario(cfg, base_dir, errors)]


def cmd_sweep(args):
    cfg, base_dir = _load_config(args.config)
    errors = []
    scenarios = _sweep_scenarios(cfg, base_dir, errors)
    quad = _quad_from_config(cfg, errors)
    grid_text = args.grid or cfg.get("beta_grid")
    if grid_text is None:
        errors.append("missing field: beta_grid (or --grid override)")
        betas = None
    else:
        try:
            betas = _parse_grid(grid_text)
        except ConfigError as exc:
            errors.extend(exc.messages)
            betas = None
    if errors:
        raise ConfigError(errors)

    suffixes = [""] if len(scenarios) == 1 else ["_1", "_2"]
    header = ["beta"]
    for suffix in suffixes:
        header.extend(f"{name}{suffix}" for name in _SWEEP_FIELDS)
    lines = [",".join(header)]
    for beta in betas:
        row = [f"{beta:.12g}"]
        for copula, marginal, alpha in scenarios:
            report = contributions(
                MeasureRequest(copula=copula, marginal_y=marginal,
                               alpha=alpha, beta=float(beta)), quad)
            row.extend(f"{getattr(report, name):.12g}"
                       for name in _SWEEP_FIELDS)
        lines.append(",".join(row))
    text = "\n".join(lines)
    out_path = args.out or cfg.get("out")
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_oracle(args):
    cfg, base_dir = _load_config(args.config)
    errors = []
    copula, marginal, alpha = _build_scenario(cfg, base_dir, errors)
    beta = _beta_from_config(cfg, errors)
    quad = _quad_from_config(cfg, errors)
    if errors:
        raise ConfigError(errors)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    n = args.n or cfg.get("n", 10 ** 6)
    req = MeasureRequest(copula=copula, marginal_y=marginal,
                         alpha=alpha, beta=beta)
    rows = []
    for name, func, mode, statistic in (
            ("vcovar", vcovar, "at_least_one", "var"),
            ("mcovar", mcovar, "all", "var"),
            ("vcoes", lambda r: vcoes(r, quad), "at_least_one", "es"),
            ("mcoes", lambda r: mcoes(r, quad), "all", "es")):
        closed = func(req)
        est = mc_measure(copula, marginal, alpha, beta, mode, n,
                         RngSpec(seed=seed), statistic=statistic)
        z = (closed - est.estimate) / est.std_error if est.std_error else 0.0
        rows.append({"measure": name, "closed_form": closed,
                     "mc_estimate": est.estimate, "mc_std_error":
                     est.std_error, "z_score": z,
                     "n_conditional": est.n_conditional})
    _emit({"alpha": list(alpha.values), "beta": beta, "n": n,
           "seed": seed, "rows": rows}, args.out or cfg.get("out"))
    return 0


def cmd_backtest(args):
    series = read_forecast_csv(args.csv_path)
    if args.m is not None and args.m != series.m:
        raise ConfigError(
            f"--m {args.m} does not match {series.m} forecast columns")
    summary, result = backtest_series(series, args.beta)
    payload = result.to_dict()
    payload["violation_rate"] = summary.violation_rate
    # carried along so downstream consumers can rebuild expected cell counts
    payload["beta"] = args.beta
    payload["m"] = series.m
    _emit(payload, args.out)
    return 0


def _marginal_arg(text, label):
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{label} is not valid JSON: {exc}") from exc
    try:
        return marginal_from_spec(spec, os.getcwd())
    except VulnRiskError as exc:
        raise ConfigError(f"{label}: {exc}") from exc


def cmd_order_check(args):
    m1 = _marginal_arg(args.marginal1, "--marginal1")
    m2 = _marginal_arg(args.marginal2, "--marginal2")
    order = Order(args.order)
    both_pareto = isinstance(m1, ParetoMarginal) and \
        isinstance(m2, ParetoMarginal)
    if args.method == "closed" or (args.method == "auto" and both_pareto):
        if not both_pareto:
            raise ConfigError("closed-form verdicts need two Pareto marginals")
        verdict = pareto_order(order, m1, m2)
        method = "closed"
    else:
        verdict = numeric_order(order, m1, m2, grid_n=args.grid_n)
        method = "numeric"
    payload = verdict.to_dict()
    payload["method"] = method
    _emit(payload, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vulnrisk",
        description="Vulnerability conditional risk measures, oracles, "
                    "order checks, and backtests.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_measure = sub.add_parser("measure", help="compute one MeasureReport")
    p_measure.add_argument("--config", required=False)
    p_measure.add_argument("--out")
    p_measure.set_defaults(func=cmd_measure)

    p_sweep = sub.add_parser("sweep", help="measures over a beta grid (CSV)")
    p_sweep.add_argument("--config", required=False)
    p_sweep.add_argument("--grid", help="start:stop:step override")
    p_sweep.add_argument("--out")
    p_sweep.set_defaults(func=cmd_sweep)

    p_oracle = sub.add_parser("oracle",
                              help="closed form vs Monte Carlo comparison")
    p_oracle.add_argument("--config", required=False)
    p_oracle.add_argument("--n", type=int)
    p_oracle.add_argument("--seed", type=int)
    p_oracle.add_argument("--out")
    p_oracle.set_defaults(func=cmd_oracle)

    p_backtest = sub.add_parser("backtest", help="Nass backtest of a CSV")
    p_backtest.add_argument("csv_path")
    p_backtest.add_argument("--beta", type=float, required=True)
    p_backtest.add_argument("--m", type=int)
    p_backtest.add_argument("--out")
    p_backtest.set_defaults(func=cmd_backtest)

    p_order = sub.add_parser("order-check",
                             help="stochastic order verdict (JSON)")
    p_order.add_argument("--order", required=True,
                         choices=[o.value for o in Order])
    p_order.add_argument("--marginal1", required=True,
                         help="marginal spec as inline JSON")
    p_order.add_argument("--marginal2", required=True)
    p_order.add_argument("--method", choices=["auto", "closed", "numeric"],
                         default="auto")
    p_order.add_argument("--grid-n", type=int, default=64)
    p_order.add_argument("--out")
    p_order.set_defaults(func=cmd_order_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for message in exc.messages:
            print(f"error: {message}", file=sys.stderr)
        return 2
    except VulnRiskError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
