"""Fixtures: artifacts produced through the primary CLI, never the library."""

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

FRONTEND_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(FRONTEND_DIR))  # plot_sweep.py / plot_backtest.py


def run_cli(args):
    result = subprocess.run([sys.executable, "-m", "vulnrisk.cli", *args],
                            capture_output=True, text=True)
    if result.returncode != 0:
        raise RuntimeError(
            f"vulnrisk {' '.join(args)} failed ({result.returncode}):\n"
            f"{result.stderr}")
    return result.stdout


EXAMPLE_I = {
    "scenarios": [
        {"copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 20, "k": 16}},
        {"copula": {"family": "gumbel", "theta": 3.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 16, "k": 20}},
    ],
    "alpha": [0.95, 0.95],
    "beta_grid": "0.05:0.95:0.05",
}

SINGLE = {
    "copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
    "marginal": {"kind": "pareto", "a": 9, "k": 20},
    "alpha": [0.95, 0.95],
    "beta_grid": "0.1:0.9:0.1",
}


@pytest.fixture(scope="session")
def example_i_csv(tmp_path_factory):
    root = tmp_path_factory.mktemp("example_i")
    config = root / "config.json"
    config.write_text(json.dumps(EXAMPLE_I))
    out = root / "sweep.csv"
    run_cli(["sweep", "--config", str(config), "--out", str(out)])
    return out


@pytest.fixture(scope="session")
def single_scenario_csv(tmp_path_factory):
    root = tmp_path_factory.mktemp("single")
    config = root / "config.json"
    config.write_text(json.dumps(SINGLE))
    out = root / "sweep.csv"
    run_cli(["sweep", "--config", str(config), "--out", str(out)])
    return out


def write_series_csv(path, z_counts, m=4):
    """Forecast series whose violation counts reproduce ``z_counts``."""
    lines = ["t,condition_met,y," + ",".join(f"f{j + 1}" for j in range(m))]
    forecasts = ",".join(str(float(j + 1)) for j in range(m))
    t = 0
    for z, count in enumerate(z_counts):
        for _ in range(count):
            lines.append(f"{t},1,{z + 0.5},{forecasts}")
            t += 1
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture(scope="session")
def exact_backtest_json(tmp_path_factory):
    # counts exactly equal to the expected cells at N=400, beta=0.95, m=4
    root = tmp_path_factory.mktemp("backtest_exact")
    series = root / "series.csv"
    write_series_csv(series, [380, 5, 5, 5, 5])
    out = root / "nass.json"
    run_cli(["backtest", str(series), "--beta", "0.95", "--out", str(out)])
    return out


@pytest.fixture(scope="session")
def simulated_backtest_json(tmp_path_factory):
    root = tmp_path_factory.mktemp("backtest_sim")
    rng = np.random.default_rng(90210)
    z = rng.multinomial(400, [0.95, 0.0125, 0.0125, 0.0125, 0.0125])
    series = root / "series.csv"
    write_series_csv(series, z.tolist())
    out = root / "nass.json"
    run_cli(["backtest", str(series), "--beta", "0.95", "--out", str(out)])
    return out
