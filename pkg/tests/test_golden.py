"""Golden-file regression tests: CLI output frozen byte-for-byte.

These protect output stability (12-significant-digit formatting, column
order, JSON layout), not numerical correctness -- the oracles elsewhere own
that.  Regenerate a golden file only for an intentional format change.
"""

import json
from pathlib import Path

import pytest

from vulnrisk.cli import main

GOLDEN = Path(__file__).parent / "golden"

MEASURE_CONFIGS = {
    "measure_gumbel": {
        "copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
        "marginal": {"kind": "pareto", "a": 20, "k": 16},
        "alpha": [0.95, 0.95], "beta": 0.95},
    "measure_independence": {
        "copula": {"family": "independence", "dim": 3},
        "marginal": {"kind": "pareto", "a": 20, "k": 16},
        "alpha": [0.95, 0.95], "beta": 0.95},
}

SWEEP_CONFIG = {
    "scenarios": [
        {"copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 20, "k": 16}},
        {"copula": {"family": "gumbel", "theta": 3.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 16, "k": 20}}],
    "alpha": [0.95, 0.95], "beta_grid": "0.05:0.95:0.05"}


def run(args, capsys):
    assert main(args) == 0
    return capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(MEASURE_CONFIGS))
def test_measure_golden(name, tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(MEASURE_CONFIGS[name]))
    out = run(["measure", "--config", str(cfg)], capsys)
    assert out == (GOLDEN / f"{name}.json").read_text()


def test_sweep_golden(tmp_path, capsys):
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(SWEEP_CONFIG))
    out = run(["sweep", "--config", str(cfg)], capsys)
    assert out == (GOLDEN / "sweep_example_i.csv").read_text()


def test_order_check_golden(capsys):
    out = run(["order-check", "--order", "disp",
               "--marginal1", '{"kind": "pareto", "a": 4, "k": 5}',
               "--marginal2", '{"kind": "pareto", "a": 3, "k": 4}'], capsys)
    assert out == (GOLDEN / "order_check_disp.json").read_text()


def test_backtest_golden(capsys):
    out = run(["backtest", str(GOLDEN / "series_fixed.csv"),
               "--beta", "0.95", "--m", "4"], capsys)
    assert out == (GOLDEN / "backtest_fixed.json").read_text()
