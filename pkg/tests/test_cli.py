import csv
import subprocess
import sys

import pytest

from covadapt.cli import main


def _csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_cor_matrix_two_by_two(tmp_path):
    out = tmp_path / "cor.csv"
    assert main(["cor-matrix", "--levels", "2,2", "--out", str(out)]) == 0
    rows = _csv(out)
    assert rows[0] == ["stratum", "(1,1)", "(1,2)", "(2,1)", "(2,2)"]
    assert [r[1:] for r in rows[1:]] == [["1", "-1", "-1", "1"], ["-1", "1", "1", "-1"],
                                         ["-1", "1", "1", "-1"], ["1", "-1", "-1", "1"]]


def test_cor_matrix_fractions_to_stdout(capsys):
    assert main(["cor-matrix", "--levels", "3,3"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[1][1:4] == ["1", "-1/2", "-1/2"] and rows[1][5] == "1/4"


def test_eigen_verify(tmp_path, capsys):
    out = tmp_path / "eig.csv"
    assert main(["eigen", "--levels", "2,2,2,2", "--out", str(out), "--verify", "--jacobi"]) == 0
    err = capsys.readouterr().err
    assert "16/11" in err and "eigenbasis exact and complete: True" in err
    assert "1.4545454545" in err
    rows = _csv(out)
    assert rows[0] == ["J", "eigenvalue", "eigenvalue_float", "multiplicity"]
    assert sum(int(r[3]) for r in rows[1:]) == 16


def test_mc_cov_outputs(tmp_path):
    out = tmp_path / "mc"
    assert main(["mc-cov", "--levels", "2,2", "--per-stratum", "100", "--reps", "50",
                 "--out", str(out)]) == 0
    summ = dict(_csv(out / "summary.csv")[1:])
    assert int(summ["n"]) == 400 and 0 < float(summ["sigma2_hat"]) < 1
    assert len(_csv(out / "cov_hat.csv")) == 4
    assert _csv(out / "class_correlations.csv")[0] == ["I", "simulated", "theoretical", "abs_diff"]


def test_simulate_tests_byte_identical(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("levels = 2, 2\ncovariate_log_hr = ln(10), ln(5)\nn = 150\n"
                   "replications = 8\nsigma2 = 0.235\n")
    outs = []
    for k, threads in enumerate(("1", "2")):
        d = tmp_path / f"run{k}"
        assert main(["simulate-tests", "--config", str(cfg), "--seed", "99",
                     "--threads", threads, "--out", str(d)]) == 0
        outs.append(d)
    for name in ("per_replication.csv", "summary.csv"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()


def test_simulate_tests_preset_with_theta(tmp_path, capsys):
    d = tmp_path / "alt"
    assert main(["simulate-tests", "--preset", "case1", "--replications", "3", "--theta",
                 "-0.3567", "--out", str(d)]) == 0
    assert _csv(d / "summary.csv")[1][1] == "power"


def test_reproduce_table_a2_row(tmp_path):
    assert main(["reproduce", "tableA2", "--rows", "2 2", "--reps", "2000",
                 "--per-stratum", "500", "--out", str(tmp_path)]) == 0
    rows = {r[2]: r for r in _csv(tmp_path / "tableA2.csv")[1:]}
    assert abs(float(rows["sigma2"][3]) - 0.23509) <= 0.02
    assert float(rows["sigma2"][4]) == 0.23509


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("levels = 2, 2\nbiass = 0.8\n")
    assert main(["simulate-tests", "--config", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "biass" in err and "bad.cfg:2" in err
    assert main(["simulate-tests", "--config", str(tmp_path / "none.cfg")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code != 0
    assert main(["cor-matrix", "--levels", "3"]) == 1


def test_bad_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("COVADAPT_THREADS", "lots")
    assert main(["mc-cov", "--levels", "2,2", "--reps", "2"]) == 1
    assert "COVADAPT_THREADS" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "covadapt", "cor-matrix", "--levels", "2,2"],
                         capture_output=True, text=True, check=True)
    assert next(csv.reader(res.stdout.splitlines()[1:2])) == ["(1,1)", "1", "-1", "-1", "1"]
