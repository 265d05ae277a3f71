import subprocess
import sys

import numpy as np
import pytest

from transratio.cli import main
from transratio.io import rao_params_path
from transratio.output import OutputTable


@pytest.fixture
def p0_csv(tmp_path):
    path = tmp_path / "p0.csv"
    path.write_text("x,y\n2,9\n4,7\n6,5\n8,3\n")
    return str(path)


@pytest.fixture
def big_csv(tmp_path):
    path = tmp_path / "big.csv"
    rows = "".join(f"{i},{60 - i}\n" for i in range(1, 31))
    path.write_text("x,y\n" + rows)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(out, fmt="csv"):
    t = OutputTable.parse(out, fmt)
    return [dict(zip(t.columns, r)) for r in t.rows]


def test_estimate_requires_n(capsys, p0_csv):
    with pytest.raises(SystemExit) as exc:
        main(["estimate", "--population", p0_csv, "--seed", "1"])
    assert exc.value.code == 2
    assert "--n" in capsys.readouterr().err


def test_estimate_degenerate_L(capsys, p0_csv):
    code, out, err = run(capsys, "estimate", "--population", p0_csv, "--n", "2", "--seed", "1", "--L", "5")
    assert code == 2
    assert "DegenerateTransform" in err and out == ""


def test_estimate_outputs(capsys, p0_csv):
    code, out, _ = run(capsys, "estimate", "--population", p0_csv, "--n", "2", "--seed", "7", "--L", "10", "--format", "csv")
    assert code == 0
    rows = table(out)
    assert {r["estimator"] for r in rows} == {"ybar", "d1", "d2", "d1u", "d2u", "d3u", "dstar", "d", "du"}
    assert all(np.isfinite(r["estimate"]) for r in rows)
    code2, out2, _ = run(capsys, "estimate", "--population", p0_csv, "--n", "2", "--seed", "7", "--L", "10", "--format", "csv")
    assert out2 == out


def test_estimate_without_L_skips_transformed(capsys, p0_csv):
    code, out, _ = run(capsys, "estimate", "--population", p0_csv, "--n", "2", "--seed", "7", "--format", "tsv")
    assert code == 0
    names = [r["estimator"] for r in table(out, "tsv")]
    assert "du" not in names and "ybar" in names
    code, _, err = run(capsys, "estimate", "--population", p0_csv, "--n", "2", "--seed", "7", "--estimators", "du")
    assert code == 2 and "--L" in err


def test_estimate_failure_exit_3(capsys, tmp_path):
    path = tmp_path / "zero.csv"
    path.write_text("x,y\n0,1\n1,2\n2,3\n3,4\n")
    # every 3-subset of 4 units except {1,2,3} contains x = 0; scan seeds for one
    for seed in range(50):
        code, out, _ = run(capsys, "estimate", "--population", str(path), "--n", "3", "--seed", str(seed),
                           "--estimators", "d3u,ybar", "--format", "csv")
        rows = table(out)
        if rows[0]["estimate"] is None:
            assert code == 3
            assert "failed" in rows[0]["notes"]
            assert rows[1]["estimate"] is not None
            return
    pytest.fail("no failing seed found")


def test_bad_population_file(capsys, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n1,2\n3,oops\n")
    code, _, err = run(capsys, "estimate", "--population", str(path), "--n", "2", "--seed", "1")
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "estimate", "--population", str(tmp_path / "missing.csv"), "--n", "2", "--seed", "1")
    assert code == 2


def test_verify_p0(capsys, p0_csv):
    code, out, _ = run(capsys, "verify", "--population", p0_csv, "--n", "2", "--L", "10",
                       "--estimators", "du,d1u,d2u,d3u,d1,d2,dstar", "--format", "csv")
    assert code == 0
    verdict = {r["estimator"]: r["unbiased"] for r in table(out)}
    assert verdict == {"du": True, "d1u": True, "d2u": True, "d3u": True, "d1": False, "d2": False, "dstar": False}
    du = table(out)[0]
    assert du["exact_mean"] == 6.0 and du["Ybar"] == 6.0


def test_verify_cap(capsys, big_csv):
    code, out, err = run(capsys, "verify", "--population", big_csv, "--n", "15", "--estimators", "ybar")
    assert code == 4
    assert "155117520" in err and out == ""


def test_sweep_rao(capsys):
    code, out, _ = run(capsys, "sweep", "--params", str(rao_params_path()), "--L-list", "62.5,300,500", "--format", "csv")
    assert code == 0
    rows = table(out)
    assert [r["L"] for r in rows] == [62.5, 300.0, 500.0]
    assert rows[0]["re_vs_ybar"] == pytest.approx(198.0, abs=0.2)
    assert rows[1]["re_vs_ybar"] == pytest.approx(107.54, abs=0.1)
    assert rows[2]["re_vs_ybar"] == pytest.approx(104.15, abs=0.1)
    assert all(r["vbar_source"] == "approximated" and r["status"] == "ok" for r in rows)
    assert rows[0]["beats_ybar_and_d1u"] is True


def test_sweep_range_and_degenerate_rows(capsys, p0_csv):
    code, out, _ = run(capsys, "sweep", "--population", p0_csv, "--n", "2", "--L-range", "9:12:1", "--format", "csv")
    assert code == 0
    rows = table(out)
    assert [r["L"] for r in rows] == [9.0, 10.0, 11.0, 12.0]
    assert all(r["vbar_source"] == "exact" for r in rows)
    code, out, _ = run(capsys, "sweep", "--population", p0_csv, "--n", "2", "--L-list", "5,10", "--format", "csv")
    rows = table(out)
    assert code == 0 and rows[0]["status"].startswith("DegenerateTransform") and rows[1]["status"] == "ok"


def test_sweep_usage_errors(capsys, p0_csv):
    code, _, err = run(capsys, "sweep", "--params", str(rao_params_path()), "--L-list", "62.5", "--vbar", "exact")
    assert code == 2 and "--vbar" in err
    code, _, err = run(capsys, "sweep", "--population", p0_csv, "--L-list", "10")
    assert code == 2 and "--n" in err
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--params", str(rao_params_path()), "--L-list", "1", "--L-range", "1:2:1"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "sweep", "--params", str(rao_params_path()), "--L-range", "5:1:1")
    assert code == 2


def test_sweep_params_with_other_n(capsys):
    code, out, _ = run(capsys, "sweep", "--params", str(rao_params_path()), "--n", "3", "--L-list", "62.5", "--format", "csv")
    assert code == 0
    (row,) = table(out)
    # RE against ybar does not depend on the sampling fraction
    assert row["re_vs_ybar"] == pytest.approx(198.0, abs=0.2)


def test_simulate_usage(capsys, p0_csv):
    code, _, err = run(capsys, "simulate", "--population", p0_csv, "--n", "2", "--reps", "1", "--seed", "1")
    assert code == 2 and "--reps" in err
    with pytest.raises(SystemExit):
        main(["simulate", "--population", p0_csv, "--n", "2", "--reps", "10", "--seed", "-1"])


def test_simulate_byte_identical(capsys, p0_csv):
    argv = ["simulate", "--population", p0_csv, "--n", "2", "--reps", "5000", "--seed", "99", "--L", "10", "--format", "csv"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--workers", "4")
    assert a == b
    rows = table(a)
    du = next(r for r in rows if r["estimator"] == "du")
    assert abs(du["mc_mean"] - 6.0) < 4 * du["se"]


def test_csv_round_trip(capsys, p0_csv):
    _, out, _ = run(capsys, "verify", "--population", p0_csv, "--n", "2", "--L", "10", "--format", "csv")
    t = OutputTable.parse(out, "csv")
    assert t.render("csv") == out


def test_human_format(capsys, p0_csv):
    code, out, _ = run(capsys, "verify", "--population", p0_csv, "--n", "2", "--estimators", "ybar")
    assert code == 0 and "ybar" in out and "true" in out


def test_module_entry_point(p0_csv):
    proc = subprocess.run(
        [sys.executable, "-m", "transratio", "verify", "--population", p0_csv, "--n", "2", "--estimators", "ybar",
         "--format", "csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("estimator,")
