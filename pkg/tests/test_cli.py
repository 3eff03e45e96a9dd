import math
import subprocess
import sys

import pytest

from nondiophantine import arithmetic as ar
from nondiophantine.cli import ExprError, evaluate, main
from nondiophantine.fields import apparent_beta_tan
from nondiophantine.spacetime import FourVector, null_residual
from nondiophantine.table import SeriesTable


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_evaluate_precedence():
    ctx = ar.identity()
    assert evaluate(ctx, "1 (+) 2 (*) 3").value == 7.0
    assert evaluate(ctx, "(1 (+) 2) (*) 3").value == 9.0
    assert evaluate(ctx, "8 (-) 2 (-) 1").value == 5.0


def test_evaluate_cubic():
    assert evaluate(ar.power(3), "1 (+) 1").value == pytest.approx(2 ** (1 / 3), rel=1e-15)


def test_evaluate_neutral_names():
    ctx = ar.fechner(10, -20)
    assert evaluate(ctx, "0p").value == pytest.approx(math.e ** 2)
    assert evaluate(ctx, "3 (+) 0p").value == pytest.approx(3.0)


@pytest.mark.parametrize("expr, col", [("1 (+)", 6), ("1 ? 2", 3), ("(1 (+) 2", 9), ("", 1), ("1 2", 3)])
def test_parse_error_column(expr, col):
    with pytest.raises(ExprError) as info:
        evaluate(ar.identity(), expr)
    assert info.value.column == col


def test_ops_command(capsys):
    code, out, _ = run(capsys, "ops", "--f", "pow:p=3", "1 (+) 1")
    assert code == 0
    value, lower = out.strip().split("\t")
    assert float(value) == pytest.approx(1.2599210498948732)
    assert lower.startswith("f=") and float(lower[2:]) == pytest.approx(2.0)


@pytest.mark.parametrize("args", [
    ("ops", "--f", "pow:q=3", "1"),
    ("ops", "1 (/) 0"),
    ("ops", "--f", "tan:L=1", "0.6 (+) 0"),
    ("ops", "1 (+"),
    ("beta", "--L", "-1"),
    ("lightcone", "--f", "tan:L=1", "--apex", "0,0.7,0"),
    ("friedman", "--f", "tan:L=20", "--T0", "5", "--tmin", "-3"),
])
def test_parameter_errors_exit_2(capsys, args):
    assert run(capsys, *args)[0] == 2


def test_io_error_exit_3(capsys, tmp_path):
    target = tmp_path / "missing" / "beta.csv"
    assert run(capsys, "beta", "--out", str(target))[0] == 3


def test_plot_script_needs_out(capsys):
    assert run(capsys, "beta", "--plot-script")[0] == 2


@pytest.mark.parametrize("args", [
    ("beta", "--kind", "tan", "--L", "1", "--n", "101"),
    ("beta", "--kind", "fechner", "--n", "50"),
    ("friedman", "--f", "tan:L=20", "--T0", "one"),
    ("lightcone", "--f", "tan:L=1", "--apex", "0,-0.4,-0.2", "--n", "9"),
])
def test_repeated_runs_are_byte_identical(tmp_path, capsys, args):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_lightcone_csv_round_trip(tmp_path, capsys):
    path = tmp_path / "cone.csv"
    assert run(capsys, "lightcone", "--n", "11", "--workers", "3", "--out", str(path))[0] == 0
    ctx = ar.fechner(10, -20)
    z = ar.neutral_zero(ctx).value
    apex = FourVector(ctx, (z, z, z, z))
    tab = SeriesTable.from_csv(path)
    assert tab.columns == ["X1", "X2", "X0_future", "X0_past"]
    assert len(tab) == 121
    checked = 0
    for x1, x2, fut, past in tab.rows:
        for x0 in (fut, past):
            if x0 is not None:
                assert null_residual(FourVector(ctx, (x0, x1, x2, z)), apex) < 1e-9
                checked += 1
    assert checked > 100


def test_friedman_reports_onset(tmp_path, capsys):
    path = tmp_path / "friedman.csv"
    code, _, err = run(capsys, "friedman", "--out", str(path), "--plot-script")
    assert code == 0
    assert "T*=5.02487562189054" in err
    tab = SeriesTable.from_csv(path)
    assert "ctx=tan:L=20" in tab.comments
    assert any(c.startswith("t0=") for c in tab.comments)
    script = path.with_suffix(".plot.py").read_text()
    assert "friedman.csv" in script and "matplotlib" in script
    compile(script, "friedman.plot.py", "exec")


def test_beta_stdout_has_missing_origin(capsys):
    code, out, _ = run(capsys, "beta", "--n", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Y1,beta" and len(lines) == 6
    assert lines[3] == "0.0,"
    y, b = map(float, lines[4].split(","))
    assert b == pytest.approx(apparent_beta_tan(1, y), abs=1e-15)


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "42")
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("checks passed")


def test_selftest_is_reproducible(capsys):
    first = run(capsys, "selftest", "--seed", "7")[1]
    assert run(capsys, "selftest", "--seed", "7")[1] == first


def test_selftest_reports_probe_rejection(capsys):
    code, out, _ = run(capsys, "selftest", "--inject-nonmonotone")
    assert code == 0
    assert "PASS  custom bijection probe" in out and "rejected" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nondiophantine.cli", "ops", "--f", "tan:L=1", "0p"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("0.0\t")


def test_table_round_trip_preserves_floats():
    vals = [0.1, 1 / 3, 1e-300, -2.5e17, None]
    tab = SeriesTable(["x", "y"], [(v, 2.0) for v in vals], ["note=1"])
    back = SeriesTable.from_csv(tab.to_csv())
    assert back.comments == ["note=1"]
    assert back.column("x") == vals
    assert SeriesTable(["x", "y"], [(float("nan"), 1.0)]).to_csv() == "x,y\n,1.0\n"
