"""Command-line interface: configs, outputs, exit codes, golden stability."""

import json

import numpy as np
import pytest

from vulnrisk import (GumbelCopula, IndependenceCopula, MeasureRequest,
                      ParetoMarginal, contributions, nass_test, vcovar)
from vulnrisk.cli import main

GUMBEL_CFG = {
    "copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
    "marginal": {"kind": "pareto", "a": 20, "k": 16},
    "alpha": [0.95, 0.95],
    "beta": 0.95,
}

INDEP_CFG = {
    "copula": {"family": "independence", "dim": 3},
    "marginal": {"kind": "pareto", "a": 20, "k": 16},
    "alpha": [0.95, 0.95],
    "beta": 0.95,
}

EXAMPLE_I_SWEEP = {
    "scenarios": [
        {"copula": {"family": "gumbel", "theta": 2.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 20, "k": 16}},
        {"copula": {"family": "gumbel", "theta": 3.0, "dim": 3},
         "marginal": {"kind": "pareto", "a": 16, "k": 20}},
    ],
    "alpha": [0.95, 0.95],
    "beta_grid": "0.05:0.95:0.05",
}


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMeasure:
    def test_independence_all_deltas_zero(self, tmp_path, capsys):
        cfg = write_config(tmp_path, INDEP_CFG)
        code, out, _ = run(["measure", "--config", cfg], capsys)
        assert code == 0
        payload = json.loads(out)
        for key in ("delta_vcovar", "delta_r_vcovar", "delta_vcoes",
                    "delta_r_vcoes"):
            assert abs(payload[key]) < 1e-9
        for value in payload["delta_i_vcovar"]:
            assert abs(value) < 1e-9

    def test_matches_library_bit_for_bit(self, tmp_path, capsys):
        cfg = write_config(tmp_path, GUMBEL_CFG)
        code, out, _ = run(["measure", "--config", cfg], capsys)
        assert code == 0
        payload = json.loads(out)
        req = MeasureRequest(copula=GumbelCopula(theta=2.0, dim=3),
                             marginal_y=ParetoMarginal(a=20, k=16),
                             alpha=[0.95, 0.95], beta=0.95)
        report = contributions(req)
        # the CLI prints through a 12-significant-digit formatter; the same
        # formatter applied to the library value must reproduce it exactly
        assert payload["vcovar"] == float(f"{report.vcovar:.12g}")
        assert payload["vcoes"] == float(f"{report.vcoes:.12g}")

    def test_missing_marginal_field_exit_2(self, tmp_path, capsys):
        broken = {k: v for k, v in GUMBEL_CFG.items() if k != "marginal"}
        cfg = write_config(tmp_path, broken)
        code, _, err = run(["measure", "--config", cfg], capsys)
        assert code == 2
        assert "marginal" in err

    def test_all_errors_reported_together(self, tmp_path, capsys):
        broken = {"copula": {"family": "gumbel", "dim": 3},
                  "beta": 1.7}
        cfg = write_config(tmp_path, broken)
        code, _, err = run(["measure", "--config", cfg], capsys)
        assert code == 2
        for needle in ("theta", "marginal", "alpha", "beta"):
            assert needle in err

    def test_numeric_error_exit_3(self, tmp_path, capsys):
        heavy = dict(GUMBEL_CFG)
        heavy["marginal"] = {"kind": "pareto", "a": 0.9, "k": 1.0}
        cfg = write_config(tmp_path, heavy)
        code, _, err = run(["measure", "--config", cfg], capsys)
        assert code == 3
        assert "numeric error" in err

    def test_out_file(self, tmp_path, capsys):
        cfg = write_config(tmp_path, INDEP_CFG)
        out_path = tmp_path / "report.json"
        code, out, _ = run(["measure", "--config", cfg,
                            "--out", str(out_path)], capsys)
        assert code == 0 and out == ""
        assert "vcovar" in json.loads(out_path.read_text())

    def test_golden_stability(self, tmp_path, capsys):
        cfg = write_config(tmp_path, GUMBEL_CFG)
        outputs = {run(["measure", "--config", cfg], capsys)[1]
                   for _ in range(2)}
        assert len(outputs) == 1

    def test_quadrature_config_accepted(self, tmp_path, capsys):
        tuned = dict(GUMBEL_CFG,
                     quadrature={"rel_tol": 1e-8, "n_nodes": 12,
                                 "panel_width": 0.5, "max_panels": 600})
        cfg = write_config(tmp_path, tuned)
        code, out, _ = run(["measure", "--config", cfg], capsys)
        assert code == 0
        baseline = json.loads(run(["measure", "--config",
                                   write_config(tmp_path, GUMBEL_CFG,
                                                "base.json")], capsys)[1])
        assert json.loads(out)["vcoes"] == pytest.approx(
            baseline["vcoes"], rel=1e-7)

    def test_bad_quadrature_config(self, tmp_path, capsys):
        cfg = write_config(tmp_path,
                           dict(GUMBEL_CFG, quadrature={"n_nodes": "many"}))
        code, _, err = run(["measure", "--config", cfg], capsys)
        assert code == 2
        assert "quadrature" in err


class TestSweep:
    def test_grid_size(self, tmp_path, capsys):
        cfg = write_config(tmp_path, dict(INDEP_CFG, beta_grid=None))
        code, out, _ = run(["sweep", "--config", cfg,
                            "--grid", "0.01:0.99:0.01"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 100  # header + 99 rows
        assert lines[0].startswith("beta,var,es,vcovar,mcovar,vcoes,mcoes")

    def test_example_i_ordering_and_coes_dominance(self, tmp_path, capsys):
        cfg = write_config(tmp_path, EXAMPLE_I_SWEEP)
        code, out, _ = run(["sweep", "--config", cfg], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        header = lines[0].split(",")
        rows = [dict(zip(header, map(float, line.split(","))))
                for line in lines[1:]]
        assert len(rows) == 19
        for row in rows:
            assert row["vcovar_1"] <= row["vcovar_2"]
            assert row["vcoes_1"] >= row["es_1"]  # LTD dominance
            assert row["vcoes_2"] >= row["es_2"]

    def test_missing_grid(self, tmp_path, capsys):
        cfg = write_config(tmp_path, INDEP_CFG)
        code, _, err = run(["sweep", "--config", cfg], capsys)
        assert code == 2
        assert "beta_grid" in err

    def test_bad_grid_spec(self, tmp_path, capsys):
        cfg = write_config(tmp_path, INDEP_CFG)
        code, _, err = run(["sweep", "--config", cfg, "--grid", "0.5:0.9"],
                           capsys)
        assert code == 2


class TestOracle:
    def test_small_run(self, tmp_path, capsys):
        cfg = write_config(tmp_path, dict(GUMBEL_CFG, n=200000, seed=5))
        code, out, _ = run(["oracle", "--config", cfg], capsys)
        assert code == 0
        payload = json.loads(out)
        assert {row["measure"] for row in payload["rows"]} == \
            {"vcovar", "mcovar", "vcoes", "mcoes"}
        for row in payload["rows"]:
            assert abs(row["z_score"]) < 5.0

    def test_seed_override_changes_estimate(self, tmp_path, capsys):
        cfg = write_config(tmp_path, dict(GUMBEL_CFG, n=100000, seed=5))
        _, out_a, _ = run(["oracle", "--config", cfg], capsys)
        _, out_b, _ = run(["oracle", "--config", cfg, "--seed", "6"], capsys)
        rows_a = json.loads(out_a)["rows"]
        rows_b = json.loads(out_b)["rows"]
        assert rows_a[0]["mc_estimate"] != rows_b[0]["mc_estimate"]


class TestBacktest:
    def test_csv_to_json(self, tmp_path, capsys):
        rng = np.random.default_rng(8)
        m, beta, n = 4, 0.95, 400
        z = rng.multinomial(1, [0.95, 0.0125, 0.0125, 0.0125, 0.0125],
                            size=n).argmax(axis=1)
        lines = ["t,condition_met,y,f1,f2,f3,f4"]
        for i, zi in enumerate(z):
            # loss sits above exactly z_i of the nondecreasing forecasts
            lines.append(f"{i},1,{zi + 0.5},1.0,2.0,3.0,4.0")
        path = tmp_path / "series.csv"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(["backtest", str(path), "--beta", "0.95",
                            "--m", "4"], capsys)
        assert code == 0
        payload = json.loads(out)
        expected = nass_test(z, beta, m)
        assert payload["N"] == n
        assert payload["O"] == list(expected.o)
        assert payload["p_value"] == float(f"{expected.p_value:.12g}")
        assert payload["violation_rate"] == pytest.approx(
            np.mean(z >= 1), abs=1e-12)

    def test_m_mismatch(self, tmp_path, capsys):
        path = tmp_path / "series.csv"
        path.write_text("t,condition_met,y,f1\n0,1,1.0,2.0\n")
        code, _, err = run(["backtest", str(path), "--beta", "0.95",
                            "--m", "4"], capsys)
        assert code == 2

    def test_malformed_csv(self, tmp_path, capsys):
        path = tmp_path / "series.csv"
        path.write_text("wrong,header\n1,2\n")
        code, _, _ = run(["backtest", str(path), "--beta", "0.95"], capsys)
        assert code == 2


class TestOrderCheck:
    # the four worked comparison pairs and their strongest claimed order
    WORKED_PAIRS = [
        ("st", {"a": 20, "k": 16}, {"a": 16, "k": 20}),
        ("disp", {"a": 4, "k": 5}, {"a": 3, "k": 4}),
        ("star", {"a": 4, "k": 3}, {"a": 3, "k": 2}),
        ("icx", {"a": 9, "k": 20}, {"a": 5, "k": 18}),
    ]

    @pytest.mark.parametrize("order,m1,m2", WORKED_PAIRS)
    def test_closed_form_pairs(self, order, m1, m2, capsys):
        code, out, _ = run([
            "order-check", "--order", order,
            "--marginal1", json.dumps(dict(kind="pareto", **m1)),
            "--marginal2", json.dumps(dict(kind="pareto", **m2))], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["holds"] is True and payload["method"] == "closed"

    def test_failing_pair_has_witness(self, capsys):
        code, out, _ = run([
            "order-check", "--order", "st",
            "--marginal1", '{"kind": "pareto", "a": 4, "k": 5}',
            "--marginal2", '{"kind": "pareto", "a": 3, "k": 4}'], capsys)
        payload = json.loads(out)
        assert payload["holds"] is False
        assert "witness" in payload

    def test_numeric_method(self, capsys):
        code, out, _ = run([
            "order-check", "--order", "disp", "--method", "numeric",
            "--marginal1", '{"kind": "pareto", "a": 4, "k": 5}',
            "--marginal2", '{"kind": "pareto", "a": 3, "k": 4}'], capsys)
        assert code == 0
        assert json.loads(out)["method"] == "numeric"

    def test_bad_marginal_json(self, capsys):
        code, _, err = run([
            "order-check", "--order", "st",
            "--marginal1", "not-json",
            "--marginal2", '{"kind": "pareto", "a": 3, "k": 4}'], capsys)
        assert code == 2
