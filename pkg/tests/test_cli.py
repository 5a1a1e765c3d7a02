"""Command-line interface: formats, round trips, exit codes."""
import csv
import io
import json
import math
import subprocess

import numpy as np
import pytest
from click.testing import CliRunner

from susy_ces import closedform as cf
from susy_ces import potential
from susy_ces.cli import main
from susy_ces.potential import Sector


@pytest.fixture()
def runner():
    return CliRunner()


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# table


def test_table_csv_round_trip(runner):
    res = runner.invoke(main, ["table", "--m", "1", "--omega", "1"])
    assert res.exit_code == 0
    header, rows = parse_csv(res.output)
    assert header == ["x", "V", "Z_re", "Z_im", "dZ_re", "dZ_im"]
    assert len(rows) == 50
    xs = np.array([float(r[0]) for r in rows])
    assert np.all(np.diff(xs) > 0)
    assert xs[0] == 0.1 and xs[-1] == 10.0
    # %.17g output round-trips doubles exactly: cross-check a full row
    p = cf.solution_params(1.0, 1.0)
    z = cf.solution_Z(p, cf.Branch.I, Sector.MINUS, xs)
    v = potential.V(xs, 1.0, Sector.MINUS)
    for i in (0, 24, 49):
        assert float(rows[i][1]) == float(v[i])
        assert float(rows[i][2]) == float(z.value[i].real)
        assert float(rows[i][5]) == float(z.derivative[i].imag)


def test_table_json_payload(runner):
    res = runner.invoke(main, ["table", "--m", "2", "--omega", "0.5",
                               "--sector", "plus", "--branch", "II",
                               "--points", "7", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["m"] == 2.0 and payload["omega"] == 0.5
    assert payload["sector"] == "plus" and payload["branch"] == "II"
    assert len(payload["rows"]) == 7
    assert set(payload["rows"][0]) == {"x", "V", "Z_re", "Z_im", "dZ_re", "dZ_im"}
    x0 = payload["rows"][0]["x"]
    assert payload["rows"][0]["V"] == float(potential.V(x0, 2.0, Sector.PLUS))


def test_table_log_spacing(runner):
    res = runner.invoke(main, ["table", "--m", "1", "--omega", "1",
                               "--x-min", "0.01", "--x-max", "10",
                               "--points", "4", "--spacing", "log"])
    assert res.exit_code == 0
    _, rows = parse_csv(res.output)
    xs = [float(r[0]) for r in rows]
    ratios = [xs[i + 1] / xs[i] for i in range(3)]
    assert ratios == pytest.approx([10.0, 10.0, 10.0], rel=1e-12)


def test_table_writes_file(runner, tmp_path):
    out = tmp_path / "t.csv"
    res = runner.invoke(main, ["table", "--m", "1", "--omega", "1",
                               "--points", "3", "--out", str(out)])
    assert res.exit_code == 0
    header, rows = parse_csv(out.read_text())
    assert header[0] == "x" and len(rows) == 3


def test_table_usage_errors(runner):
    for args in (["--points", "1"], ["--x-min", "0"], ["--x-min", "5", "--x-max", "2"]):
        res = runner.invoke(main, ["table", "--m", "1", "--omega", "1"] + args)
        assert res.exit_code == 2, args


def test_table_far_region_is_a_config_error(runner):
    res = runner.invoke(main, ["table", "--m", "1", "--omega", "1", "--x-max", "1000"])
    assert res.exit_code == 2
    assert "exceeds the series bound" in res.stderr
    assert "ODE propagation" in res.stderr


# ---------------------------------------------------------------------------
# verify


def test_verify_specfun_json(runner):
    res = runner.invoke(main, ["verify", "--suite", "specfun", "--format", "json"])
    assert res.exit_code == 0
    reports = json.loads(res.output)
    assert len(reports) == 6
    assert all(r["passed"] for r in reports)
    assert all(set(r) == {"name", "passed", "max_error", "tolerance", "details"}
               for r in reports)


def test_verify_text_and_failure_exit(runner):
    res = runner.invoke(main, ["verify", "--suite", "specfun",
                               "--rel-tol", "1e-30"])
    assert res.exit_code == 1
    assert "FAIL" in res.output
    assert "0/6 checks passed" in res.output


def test_verify_pass_text(runner):
    res = runner.invoke(main, ["verify", "--suite", "specfun"])
    assert res.exit_code == 0
    assert "6/6 checks passed" in res.output
    assert "FAIL" not in res.output


def test_verify_unknown_suite(runner):
    res = runner.invoke(main, ["verify", "--suite", "bogus"])
    assert res.exit_code == 2


def test_verify_honours_golden_dir_override(runner, tmp_path):
    from susy_ces import specfun as sf
    src = sf.golden_dir() / "chf.csv"
    lines = src.read_text().splitlines()
    fields = lines[1].split(",")
    fields[5] = repr(float(fields[5]) + 1e-3)  # corrupt one frozen value
    lines[1] = ",".join(fields)
    (tmp_path / "chf.csv").write_text("\n".join(lines) + "\n")
    res = runner.invoke(main, ["verify", "--suite", "specfun"],
                        env={"SUSY_CES_GOLDEN_DIR": str(tmp_path)})
    assert res.exit_code == 1
    assert "FAIL" in res.output
    assert "golden" in res.output


# ---------------------------------------------------------------------------
# phase


def test_phase_text_converged(runner):
    res = runner.invoke(main, ["phase", "--m", "0.5", "--omega", "2"])
    assert res.exit_code == 0
    assert "converged: True" in res.output
    assert "x_match=10" in res.output


def test_phase_csv(runner):
    res = runner.invoke(main, ["phase", "--m", "0.5", "--omega", "2",
                               "--format", "csv"])
    assert res.exit_code == 0
    header, rows = parse_csv(res.output)
    assert header == ["x", "difference", "accelerated"]
    assert rows[0][2] == ""          # no accelerated value at the first rung
    assert float(rows[0][0]) == 20.0
    assert abs(float(rows[-1][2]) - 0.5 * math.pi) < 1e-3


def test_phase_json(runner):
    res = runner.invoke(main, ["phase", "--m", "0.5", "--omega", "2",
                               "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["converged"] is True
    assert abs(payload["estimate"] - 0.5 * math.pi) < 1e-3
    assert payload["x_match"] == 10.0
    assert len(payload["raw"]) == len(payload["x"])
    assert len(payload["accelerated"]) == len(payload["x"]) - 1


def test_phase_not_converged_exits_1_with_partial_output(runner):
    res = runner.invoke(main, ["phase", "--m", "0.5", "--omega", "2",
                               "--x-limit", "50"])
    assert res.exit_code == 1
    assert "not converged" in res.stderr
    assert "converged: False" in res.output   # partial ladder still printed


def test_phase_invalid_params_exit_2(runner):
    res = runner.invoke(main, ["phase", "--m", "-1", "--omega", "2"])
    assert res.exit_code == 2
    assert "error:" in res.stderr


# ---------------------------------------------------------------------------
# figures


def test_figures_writes_curve_files(runner, tmp_path):
    res = runner.invoke(main, ["figures", "--out-dir", str(tmp_path),
                               "--points", "60"])
    assert res.exit_code == 0
    names = ["fig1_w_m+1.csv", "fig1_w_m-1.csv", "fig2_vplus_m2.csv",
             "fig2_vminus_m2.csv"]
    for name in names:
        assert (tmp_path / name).exists()
        assert f"wrote {tmp_path / name}" in res.output
        header, rows = parse_csv((tmp_path / name).read_text())
        assert len(rows) == 60
        xs = [float(r[0]) for r in rows]
        assert xs == sorted(xs)
    w1 = [float(r[1]) for r in parse_csv((tmp_path / names[0]).read_text())[1]]
    assert all(v < 0 for v in w1)


def test_figures_rejects_single_point(runner, tmp_path):
    res = runner.invoke(main, ["figures", "--out-dir", str(tmp_path),
                               "--points", "1"])
    assert res.exit_code == 2


# ---------------------------------------------------------------------------
# installed entry point (real process, real exit codes)


def test_entry_point_version():
    proc = subprocess.run(["susy-ces", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout


def test_entry_point_usage_error_code():
    proc = subprocess.run(["susy-ces", "verify", "--suite", "bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_entry_point_help_lists_commands():
    proc = subprocess.run(["susy-ces", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for cmd in ("table", "verify", "phase", "figures"):
        assert cmd in proc.stdout
