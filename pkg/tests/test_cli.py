import json
import re
import subprocess
import sys

import pytest

from dynfatigue.cli import main

ERR_LINE = re.compile(r"^E_[A-Z]+: \S.*$")


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _profile(path, rows):
    path.write_text("time_min,load_N\n" + "".join(f"{t},{f}\n" for t, f in rows))
    return path


def _single_error_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and ERR_LINE.match(err[0]), err
    return err[0]


class TestSimulate:
    def test_constant_half_load(self, workdir, capsys):
        _profile(workdir / "p.csv", [(0, 50), (2, 50)])
        assert main(["simulate", "--profile", "p.csv", "--mvc", "100", "--out", "out"]) == 0
        summary = json.loads((workdir / "out" / "summary.json").read_text())
        assert summary["exhausted_at"] == pytest.approx(1.3863, abs=1e-4)
        assert summary["final_f_cem"] == pytest.approx(50.0, rel=1e-5)
        assert summary["u_unit"] == "min"
        header = (workdir / "out" / "trajectory.csv").read_text().splitlines()[0]
        assert header == "time_min,f_cem_N,u_index,f_integral"

    def test_zero_load(self, workdir):
        _profile(workdir / "z.csv", [(0, 0), (1, 0)])
        assert main(["simulate", "--profile", "z.csv", "--mvc", "80", "--out", "o"]) == 0
        summary = json.loads((workdir / "o" / "summary.json").read_text())
        assert summary["final_f_cem"] == 80.0
        assert summary["final_u"] == 0.0
        assert summary["exhausted_at"] is None

    def test_missing_file(self, workdir, capsys):
        assert main(["simulate", "--profile", "nope.csv", "--mvc", "100", "--out", "o"]) != 0
        line = _single_error_line(capsys)
        assert line.startswith("E_IO") and "nope.csv" in line

    def test_malformed_csv_names_line(self, workdir, capsys):
        (workdir / "bad.csv").write_text("time_min,load_N\n0,1\n1,oops\n")
        assert main(["simulate", "--profile", "bad.csv", "--mvc", "100", "--out", "o"]) != 0
        line = _single_error_line(capsys)
        assert line.startswith("E_PARSE") and ":3:" in line

    @pytest.mark.parametrize("extra", [["--mvc", "0"], ["--mvc", "100", "--dt", "-1"], ["--mvc", "x"]])
    def test_bad_overrides(self, workdir, capsys, extra):
        _profile(workdir / "p.csv", [(0, 1), (1, 1)])
        assert main(["simulate", "--profile", "p.csv", "--out", "o", *extra]) != 0
        assert _single_error_line(capsys).startswith("E_USAGE")

    def test_stride(self, workdir):
        _profile(workdir / "p.csv", [(0, 10), (1, 10)])
        main(["simulate", "--profile", "p.csv", "--mvc", "100", "--out", "o", "--stride", "100"])
        rows = (workdir / "o" / "trajectory.csv").read_text().splitlines()
        assert len(rows) == 1 + 11

    def test_deterministic_output(self, workdir):
        _profile(workdir / "p.csv", [(0, 10), (0.5, 70), (1.5, 20)])
        for out in ("a", "b"):
            main(["simulate", "--profile", "p.csv", "--mvc", "100", "--out", out])
        for name in ("trajectory.csv", "summary.json"):
            assert (workdir / "a" / name).read_bytes() == (workdir / "b" / name).read_bytes()


class TestMet:
    def test_dynamic(self, capsys):
        assert main(["met", "--fmvc", "0.5"]) == 0
        assert capsys.readouterr().out.strip() == "dynamic,0.5,1.38629"

    def test_catalog_model(self, capsys):
        assert main(["met", "--fmvc", "0.5", "--model", "rohmert"]) == 0
        assert capsys.readouterr().out.strip() == "rohmert,0.5,1.1"

    def test_domain_error(self, capsys):
        assert main(["met", "--fmvc", "0.1", "--model", "huijgens"]) != 0
        assert "0.15" in _single_error_line(capsys)

    def test_unknown_model(self, capsys):
        assert main(["met", "--fmvc", "0.5", "--model", "nobody"]) != 0
        assert _single_error_line(capsys).startswith("E_DOMAIN")


class TestValidateTable2:
    def test_default_run(self, workdir, capsys):
        assert main(["validate-table2", "--out", "v"]) == 0
        out = capsys.readouterr().out
        assert "rohmert_posture5" in out and "76 points" in out
        rows = (workdir / "v" / "report.csv").read_text().splitlines()
        assert len(rows) == 25
        for region in ("general", "shoulder", "elbow", "hand", "back_hip"):
            assert (workdir / "v" / f"curves_{region}.csv").exists()
            assert (workdir / "v" / f"icc_{region}.csv").exists()

    def test_region_filter(self, workdir):
        assert main(["validate-table2", "--region", "elbow", "--out", "v"]) == 0
        rows = (workdir / "v" / "report.csv").read_text().splitlines()
        assert len(rows) == 7
        assert not (workdir / "v" / "curves_general.csv").exists()

    def test_grid_too_small(self, workdir, capsys):
        code = main(["validate-table2", "--grid-start", "0.99", "--grid-end", "0.991", "--grid-step", "0.01", "--out", "v"])
        assert code != 0
        assert "at least 3" in _single_error_line(capsys)

    def test_bad_manifest(self, workdir, capsys):
        (workdir / "m.json").write_text(json.dumps({"manifest_version": 1, "models": [{"id": "x"}]}))
        assert main(["validate-table2", "--manifest", "m.json", "--out", "v"]) != 0
        assert _single_error_line(capsys).startswith("E_CONFIG")

    def test_svg(self, workdir):
        assert main(["validate-table2", "--region", "hand", "--svg", "--out", "v"]) == 0
        assert (workdir / "v" / "curves_hand.svg").read_text().startswith("<svg")

    def test_deterministic(self, workdir):
        main(["validate-table2", "--out", "a"])
        main(["validate-table2", "--out", "b"])
        for p in sorted((workdir / "a").iterdir()):
            assert p.read_bytes() == (workdir / "b" / p.name).read_bytes()


class TestCompareDynamic:
    def test_defaults(self, workdir, capsys):
        assert main(["compare-dynamic", "--out", "c"]) == 0
        out = capsys.readouterr().out
        assert "conservation residual" in out and "(ok" in out
        summary = json.loads((workdir / "c" / "summary.json").read_text())
        assert summary["conservation_residual_rel"] < 1e-9
        for name in ("active_motor.csv", "conservation.csv", "limit_sweep.csv", "reservoir_vs_dynamic.csv", "mvc_comparison.csv"):
            assert (workdir / "c" / name).exists()

    def test_limit_sweep_column_shrinks(self, workdir):
        main(["compare-dynamic", "--out", "c"])
        rows = (workdir / "c" / "limit_sweep.csv").read_text().splitlines()[1:]
        devs = [float(r.split(",")[1]) for r in rows]
        assert len(devs) == 3 and devs[0] > devs[1] > devs[2]

    def test_matched_rates_zero_deviation(self, workdir):
        (workdir / "p.json").write_text(json.dumps({"dynamic": {"k": 1.2}, "mvc_comparison": {"f_rate": 0.02}}))
        assert main(["compare-dynamic", "--params", "p.json", "--out", "c"]) == 0
        summary = json.loads((workdir / "c" / "summary.json").read_text())
        assert summary["mvc_comparison_max_deviation"] == pytest.approx(0.0, abs=1e-12)

    def test_singular_falls_back_to_ode(self, workdir, capsys):
        params = {"active_motor": {"f_rate": 0.02, "b_rate": 0.03, "r_rate": 0.01, "duration_s": 20}}
        (workdir / "p.json").write_text(json.dumps(params))
        assert main(["compare-dynamic", "--params", "p.json", "--out", "c"]) == 0
        assert "notice:" in capsys.readouterr().err
        summary = json.loads((workdir / "c" / "summary.json").read_text())
        assert summary["closed_form_mode"] == "ode-fallback"

    @pytest.mark.parametrize(
        "doc", [{"bogus": {}}, {"active_motor": {"m1": 1}}, {"active_motor": {"m0": "x"}}, [1, 2]]
    )
    def test_bad_params(self, workdir, capsys, doc):
        (workdir / "p.json").write_text(json.dumps(doc))
        assert main(["compare-dynamic", "--params", "p.json", "--out", "c"]) != 0
        assert _single_error_line(capsys).startswith("E_CONFIG")

    def test_missing_params(self, workdir, capsys):
        assert main(["compare-dynamic", "--params", "none.json", "--out", "c"]) != 0
        assert "none.json" in _single_error_line(capsys)


def test_usage_error_single_line(capsys):
    assert main(["frobnicate"]) != 0
    assert _single_error_line(capsys).startswith("E_USAGE")


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "dynfatigue", "met", "--fmvc", "1"], capture_output=True, text=True, cwd=tmp_path
    )
    assert out.returncode == 0 and out.stdout.strip() == "dynamic,1,0"
