import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from compdistinct import cli
from compdistinct.asymptotics import CONSTANTS, eval_g

GOLDEN = Path(__file__).parent / "golden"


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def rows_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("args, golden", [
    (["exact", "--n-list", "1,3,4,10"], "exact_1_3_4_10.csv"),
    (["enumerate", "--n", "4", "--format", "json"], "enumerate_4.json"),
    (["fourier", "--k-max", "3"], "fourier_3.csv"),
])
def test_golden(args, golden, capsys):
    code, out, _ = run(args, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_exact_row(capsys):
    code, out, _ = run(["exact", "--n", "4"], capsys)
    (row,) = rows_csv(out)
    assert code == 0
    assert row["float_value"] == "1.625" and row["numerator"] == "13" and row["denominator_log2"] == "3"
    assert row["schema_version"] == cli.SCHEMA_VERSION


def test_fourier_rows(capsys):
    _, out, _ = run(["fourier", "--k-max", "2"], capsys)
    rows = rows_csv(out)
    assert [r["k"] for r in rows] == ["1", "2"]
    assert abs(float(rows[0]["two_abs"]) - 0.00000157316) <= 1e-11


def test_enumerate_rows(capsys):
    _, out, _ = run(["enumerate", "--n", "3"], capsys)
    assert len(rows_csv(out)) == 4


def test_csv_json_same_values(capsys):
    args = ["gtable", "--points", "16"]
    _, as_csv, _ = run(args, capsys)
    _, as_json, _ = run(args + ["--format", "json"], capsys)
    assert rows_csv(as_csv) == json.loads(as_json)


def test_seventeen_digits_round_trip(capsys):
    _, out, _ = run(["gtable", "--points", "8", "--format", "json"], capsys)
    for row in json.loads(out):
        x = float(row["x"])
        assert float(row["g"]) == eval_g(x)
        assert isinstance(row["g"], str)


def test_simulate_requires_seed(capsys):
    code, _, err = run(["simulate", "--n", "10"], capsys)
    assert code == cli.EXIT_CONFIG and "seed" in err


def test_simulate_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert cli.main(["simulate", "--n-list", "5,50", "--samples", "2000", "--seed", "9",
                         "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = json.loads(a.read_text())
    assert [r["n"] for r in rows] == ["5", "50"]
    assert set(rows[0]) == {"schema_version", "n", "samples", "mean", "std_error", "seed"}


def test_simulate_workers_do_not_change_output(capsys):
    base = ["simulate", "--n", "30", "--samples", "40000", "--seed", "2"]
    _, one, _ = run(base, capsys)
    _, four, _ = run(base + ["--workers", "4"], capsys)
    assert one == four


def test_simulate_tail_rows(capsys):
    _, out, _ = run(["simulate", "--n", "101", "--samples", "5000", "--seed", "1", "--tail-t", "0,10"], capsys)
    rows = rows_csv(out)
    assert [r["t"] for r in rows] == ["0", "10"]
    assert float(rows[0]["bound"]) == 2.0
    assert float(rows[1]["bound"]) == pytest.approx(2 * math.exp(-2))


def test_asymptote(capsys):
    _, out, _ = run(["asymptote", "--n", "1024"], capsys)
    (row,) = rows_csv(out)
    assert float(row["asymptote"]) == 10 + CONSTANTS.theorem_constant + eval_g(0.0)


def test_compare_rows(capsys):
    code, out, _ = run(["compare", "--n-list", "4,1,64,4096"], capsys)
    assert code == 0
    rows = rows_csv(out)
    assert [r["n"] for r in rows] == ["1", "4", "64", "4096"]
    assert rows[0]["exact_value"] == "1" and rows[0]["asymptote"] == ""
    assert "n<2 unsupported" in rows[0]["status"]
    assert rows[1]["exact_value"] == "1.625"
    assert float(rows[1]["asymptote"]) == pytest.approx(2 + CONSTANTS.theorem_constant + eval_g(0.0))
    assert rows[1]["mc_mean"] == ""
    r64, r4096 = (abs(float(r["residual_exact_vs_asymptote"])) for r in rows[2:])
    assert r4096 < r64


def test_compare_with_monte_carlo(capsys):
    code, out, _ = run(["compare", "--n-list", "20", "--samples", "20000", "--seed", "5"], capsys)
    (row,) = rows_csv(out)
    assert abs(float(row["mc_mean"]) - float(row["exact_value"])) <= 4 * float(row["mc_stderr"])
    code, _, _ = run(["compare", "--n-list", "20", "--samples", "10"], capsys)
    assert code == cli.EXIT_CONFIG


def test_compare_invariant_check():
    rows = cli.compare([64])
    rows[0]["residual_exact_vs_asymptote"] += 1e-3
    with pytest.raises(cli.InvariantError):
        cli._check_compare_rows(rows)


def test_bounds_check(capsys):
    code, out, _ = run(["bounds-check", "--trials", "2000", "--seed", "3"], capsys)
    assert code == 0
    rows = rows_csv(out)
    assert {r["scope"] for r in rows} == {"random", "paper-grid"}
    assert all(r["failures"] == "0" for r in rows)


def test_bounds_check_failure_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli.asymptotics, "check_sandwich_bounds",
                        lambda t: {"lower_ok": False, "upper_ok": True, "higher_order_ok": True})
    code, _, _ = run(["bounds-check", "--trials", "5"], capsys)
    assert code == cli.EXIT_INVARIANT


@pytest.mark.parametrize("args, code", [
    (["exact", "--n", "70000"], cli.EXIT_CAP),
    (["enumerate", "--n", "30"], cli.EXIT_CAP),
    (["exact"], cli.EXIT_CONFIG),
    (["exact", "--n-list", "3,x"], cli.EXIT_CONFIG),
    (["asymptote", "--n", "1"], cli.EXIT_CONFIG),
    (["fourier", "--k-max", "0"], cli.EXIT_CONFIG),
])
def test_exit_codes(args, code, capsys):
    assert run(args, capsys)[0] == code


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["exact", "--format", "xml"])
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "compdistinct", "exact", "--n", "3", "--format", "json"],
                         capture_output=True, text=True, check=True).stdout
    (row,) = json.loads(out)
    assert row["float_value"] == "1.5" and row["mode"] == "bigint"
