"""Command-line interface: parsing, outputs, exit codes."""

import json
import math

import numpy as np
import pytest

from varidx.cli import DistSpec, main, parse_dist_spec
from varidx.errors import SpecParseError

LOG2 = math.log(2.0)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = [ln for ln in text.strip().split("\n") if ln]
    header = lines[0].split(",")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    return header, rows


class TestDistSpec:
    @pytest.mark.parametrize(
        "text,family,params",
        [
            ("exp:2", "exp", (2.0,)),
            ("exponential:2", "exp", (2.0,)),
            ("power:3", "power", (3.0,)),
            ("uniform:0,1", "uniform", (0.0, 1.0)),
            ("w2:1.5487,0.0166", "w2", (1.5487, 0.0166)),
            ("weibull2:1.6,0.0127", "w2", (1.6, 0.0127)),
            ("lognormal:3.5559,0.2192", "lognormal", (3.5559, 0.2192)),
            ("binomial:3,0.55", "binomial", (3.0, 0.55)),
            ("betabin:3,12,10", "betabin", (3.0, 12.0, 10.0)),
            ("dunif:4", "dunif", (4.0,)),
        ],
    )
    def test_parse(self, text, family, params):
        spec = parse_dist_spec(text)
        assert spec.family == family
        assert spec.params == params

    def test_round_trip(self):
        for text in ["exp:2", "w2:1.5487,0.0166", "uniform:0,1", "betabin:3,12,10"]:
            spec = parse_dist_spec(text)
            assert parse_dist_spec(spec.format()) == spec

    def test_unknown_family_position(self):
        with pytest.raises(SpecParseError) as exc:
            parse_dist_spec("cauchy:0,1")
        assert exc.value.position == 0

    def test_bad_number_position(self):
        with pytest.raises(SpecParseError) as exc:
            parse_dist_spec("exp:x")
        assert exc.value.position == 4
        with pytest.raises(SpecParseError) as exc:
            parse_dist_spec("uniform:0,oops")
        assert exc.value.position == 10

    def test_arity_mismatch(self):
        with pytest.raises(SpecParseError):
            parse_dist_spec("exp:1,2")

    def test_kind(self):
        assert parse_dist_spec("exp:1").kind == "continuous"
        assert parse_dist_spec("dunif:4").kind == "discrete"


class TestMeasuresCommand:
    def test_exponential_pair_values(self, capsys):
        code, out, _ = run(
            capsys, "measures", "--f", "exp:1", "--g", "exp:2", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        values = {r["measure"]: r["value"] for r in payload["measures"]}
        assert abs(values["I"] - (2.0 - LOG2)) <= 1e-12
        assert abs(values["VarI"] - 4.0) <= 1e-12
        assert abs(values["K"] - (1.0 - LOG2)) <= 1e-12
        assert abs(values["VarK"] - 1.0) <= 1e-12

    def test_uniform_power_pair(self, capsys):
        code, out, _ = run(
            capsys, "measures", "--f", "uniform:0,1", "--g", "power:2", "--json"
        )
        values = {r["measure"]: r["value"] for r in json.loads(out)["measures"]}
        assert code == 0
        assert abs(values["VarI"] - 1.0) <= 1e-12

    def test_identical_pair_is_zero(self, capsys):
        code, out, _ = run(capsys, "measures", "--f", "exp:1", "--g", "exp:1", "--json")
        values = {r["measure"]: r["value"] for r in json.loads(out)["measures"]}
        assert code == 0
        assert values["K"] == 0.0 and values["VarK"] == 0.0

    def test_discrete_pair(self, capsys):
        code, out, _ = run(
            capsys, "measures", "--f", "binomial:3,0.55", "--g", "dunif:4", "--json"
        )
        assert code == 0
        values = {r["measure"]: r["value"] for r in json.loads(out)["measures"]}
        assert values["K"] > 0.0

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "measures", "--f", "exp:1", "--g", "exp:2", "--json")
        payload = json.loads(out)
        assert json.loads(json.dumps(payload)) == payload

    def test_text_output_has_method_tags(self, capsys):
        code, out, _ = run(capsys, "measures", "--f", "exp:1", "--g", "exp:2")
        assert code == 0
        assert "closed_form" in out

    def test_parse_error_exit_code(self, capsys):
        code, _, err = run(capsys, "measures", "--f", "exp:x", "--g", "exp:2")
        assert code == 2
        assert "exp:x" in err

    def test_kind_mismatch_exit_code(self, capsys):
        code, _, _ = run(capsys, "measures", "--f", "exp:1", "--g", "dunif:4")
        assert code == 2

    def test_computation_error_exit_code(self, capsys):
        code, _, err = run(
            capsys, "measures", "--f", "uniform:0,1", "--g", "uniform:2,3"
        )
        assert code == 3
        assert "intersect" in err


class TestCurvesCommand:
    def test_exponential_pair_closed_form_columns(self, capsys, tmp_path):
        out_file = tmp_path / "curves.csv"
        code, _, _ = run(
            capsys,
            "curves",
            "--pair",
            "exp",
            "--lambdas",
            "1,2",
            "--grid",
            "0.5:4:0.5",
            "--out",
            str(out_file),
        )
        assert code == 0
        header, rows = csv_rows(out_file.read_text())
        assert header[0] == "eta"
        i_col = header.index("VarI_lambda=2")
        for row in rows:
            eta = row[0]
            assert abs(row[i_col] - (eta / 2.0) ** 2) <= 1e-7

    def test_power_pair_minimum_near_unit(self, capsys):
        code, out, _ = run(capsys, "curves", "--pair", "power", "--grid", "0.2:4:0.1")
        assert code == 0
        header, rows = csv_rows(out)
        assert header == ["alpha", "I", "VarI"]
        alphas = [r[0] for r in rows]
        ivals = [r[1] for r in rows]
        assert abs(alphas[int(np.argmin(ivals))] - 1.0) <= 0.05 + 1e-9

    def test_single_grid_point(self, capsys):
        code, out, _ = run(capsys, "curves", "--pair", "power", "--grid", "2")
        assert code == 0
        _, rows = csv_rows(out)
        assert len(rows) == 1

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "curves", "--pair", "power", "--grid", "1.5:3:0.5")
        _, second, _ = run(capsys, "curves", "--pair", "power", "--grid", "1.5:3:0.5")
        assert first == second
        assert "\r" not in first


class TestBoundsCommand:
    def test_exponential_figure_data(self, capsys):
        code, out, _ = run(
            capsys,
            "bounds",
            "--pair",
            "exp",
            "--lam",
            "4",
            "--eps",
            "0.5,1,1.5,2",
            "--grid",
            "0.5:8:0.5",
        )
        assert code == 0
        header, rows = csv_rows(out)
        assert header[:2] == ["eta", "VarI"]
        for row in rows:
            vi = row[1]
            for bound in row[2:]:
                assert bound <= vi + 1e-7

    def test_power_figure_data(self, capsys):
        code, out, _ = run(
            capsys,
            "bounds",
            "--pair",
            "power",
            "--eps",
            "0.5,1,1.5,2",
            "--grid",
            "1.25:5:0.25",
        )
        assert code == 0
        _, rows = csv_rows(out)
        for row in rows:
            for bound in row[2:]:
                assert bound <= row[1] + 1e-7

    def test_tiny_eps_column_vanishes(self, capsys):
        code, out, _ = run(
            capsys, "bounds", "--pair", "exp", "--eps", "1e-6", "--grid", "1:2:0.5"
        )
        assert code == 0
        _, rows = csv_rows(out)
        for row in rows:
            assert row[2] <= 2e-12


class TestFitCommand:
    def test_reference_continuous_pipeline(self, capsys):
        code, out, _ = run(
            capsys, "fit", "--data", "murthy41", "--candidates", "w2", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        fitted = payload["candidates"][0]
        assert fitted["fitted"]
        shape, rate = fitted["fit"]["params"]
        assert abs(shape - 1.5487) / 1.5487 <= 0.01
        assert abs(rate - 0.0166) / 0.0166 <= 0.01
        assert abs(fitted["K"] - 0.099) <= 0.02

    def test_reference_pair_selection(self, capsys):
        code, out, _ = run(
            capsys,
            "fit",
            "--data",
            "murthy41",
            "--candidates",
            "w2:1.5487,0.0166",
            "w2:1.6,0.0127",
            "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ranking"][0] == "w2:1.6,0.0127"
        k = {c["label"]: c["K"] for c in payload["candidates"]}
        v = {c["label"]: c["VarK"] for c in payload["candidates"]}
        assert abs(k["w2:1.5487,0.0166"] - k["w2:1.6,0.0127"]) <= 0.01
        assert v["w2:1.5487,0.0166"] > v["w2:1.6,0.0127"]

    def test_discrete_pipeline_reference_values(self, capsys):
        code, out, _ = run(
            capsys,
            "fit",
            "--data",
            "coin3",
            "--discrete",
            "--candidates",
            "binomial",
            "betabin:3,12,10",
            "dunif:4",
            "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ranking"][0].startswith("binomial:")
        values = {c["label"]: (c["K"], c["VarK"]) for c in payload["candidates"]}
        binom_label = payload["ranking"][0]
        assert abs(values[binom_label][0] - 0.0011) <= 5e-5
        assert abs(values[binom_label][1] - 0.0023) <= 5e-5
        assert abs(values["betabin:3.0,12.0,10.0"][0] - 0.0027) <= 5e-5
        assert abs(values["dunif:4.0"][0] - 0.1305) <= 5e-5
        order = payload["ranking"]
        assert order[1].startswith("betabin") and order[2].startswith("dunif")

    def test_data_file_loading(self, capsys, tmp_path):
        path = tmp_path / "values.txt"
        path.write_text("# lifetimes\n1.5, 2.5\n3.5\n4.5 5.5\n")
        code, out, _ = run(
            capsys, "fit", "--data", str(path), "--candidates", "lognormal", "--json"
        )
        assert code == 0
        assert json.loads(out)["reference"]["n"] == 5

    def test_malformed_number_reports_line(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1.5\n2.5\nbogus\n")
        code, _, err = run(
            capsys, "fit", "--data", str(path), "--candidates", "w2"
        )
        assert code == 2
        assert ":3:" in err and "bogus" in err

    def test_missing_file_exit_code(self, capsys):
        code, _, _ = run(
            capsys, "fit", "--data", "/nonexistent/file.txt", "--candidates", "w2"
        )
        assert code == 4

    def test_all_candidates_failing_is_an_error(self, capsys):
        code, _, err = run(capsys, "fit", "--data", "murthy41", "--candidates", "exp")
        assert code == 3
        assert "failed to fit" in err

    def test_fit_failure_recorded_not_fatal(self, capsys):
        # 'exp' has no fitter; the explicit candidate still ranks.
        code, out, _ = run(
            capsys,
            "fit",
            "--data",
            "murthy41",
            "--candidates",
            "exp",
            "w2:1.6,0.0127",
            "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["failures"] and payload["failures"][0]["spec"] == "exp"
        assert payload["ranking"] == ["w2:1.6,0.0127"]

    def test_human_readable_output(self, capsys):
        code, out, _ = run(
            capsys,
            "fit",
            "--data",
            "murthy41",
            "--candidates",
            "w2:1.5487,0.0166",
            "w2:1.6,0.0127",
        )
        assert code == 0
        assert "selected: w2:1.6,0.0127" in out
        assert "decisions:" in out


class TestDatasets:
    def test_murthy41_invariants(self):
        from varidx.datasets import MURTHY41

        assert len(MURTHY41) == 20
        assert all(v > 0 for v in MURTHY41)

    def test_coin3_invariants(self):
        from varidx.datasets import COIN3

        assert sum(COIN3) == 200
        assert len(COIN3) == 4

    def test_unknown_dataset_rejected(self):
        from varidx.datasets import load
        from varidx.errors import InvalidParameterError

        with pytest.raises(InvalidParameterError):
            load("nope")


class TestPrecisionFlag:
    def test_precision_override(self, capsys):
        _, out6, _ = run(capsys, "measures", "--f", "exp:1", "--g", "exp:2")
        _, out12, _ = run(
            capsys, "measures", "--f", "exp:1", "--g", "exp:2", "--precision", "12"
        )
        assert "1.30685" in out6
        assert "1.30685281944" in out12


class TestReproduceCommand:
    @pytest.mark.parametrize(
        "target",
        [
            "example23",
            "example24",
            "remark33",
            "table2",
            "example41",
            "example44",
            "bounds_figs",
        ],
    )
    def test_fast_targets_pass(self, capsys, target):
        code, out, _ = run(capsys, "reproduce", target)
        assert code == 0
        assert "FAIL" not in out
        assert "PASS" in out

    def test_kde_targets_pass(self, capsys):
        code, out, _ = run(capsys, "reproduce", "example42")
        assert code == 0 and "FAIL" not in out
        code, out, _ = run(capsys, "reproduce", "example43")
        assert code == 0 and "FAIL" not in out

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        from varidx import cli

        def broken():
            return [cli.CheckRow("forced mismatch", 1.0, 2.0, 0.0)]

        monkeypatch.setitem(cli._TARGETS, "example23", broken)
        code, out, _ = run(capsys, "reproduce", "example23")
        assert code == 1
        assert "FAIL" in out
