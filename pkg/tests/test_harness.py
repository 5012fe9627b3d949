import csv
import math
from fractions import Fraction

import numpy as np
import pytest

from covadapt import harness
from covadapt.harness import (ConfigError, ExperimentConfig, ReproduceOptions, load_config,
                              load_preset, parse_config_text, reproduce, resolve_cov,
                              run_simulation, write_comparison, write_simulation)
from covadapt.strata import FactorSpec
from covadapt.survival_sim import four_factor_setup, two_factor_setup
from covadapt.theory import build_cor_matrix


def test_minimal_config_takes_defaults():
    cfg = parse_config_text("levels = 2, 3\n")
    assert cfg.spec.levels == (2, 3)
    assert cfg.procedure.kind == "pocock_simon" and cfg.procedure.bias_p == 0.9
    assert cfg.design.n == 600 and cfg.replications == 1000
    assert cfg.master_seed == 20240601 and cfg.cov_source == "analytic"
    assert cfg.model.factors == (1, 2)


def test_levels_are_required():
    with pytest.raises(ConfigError, match="levels"):
        parse_config_text("n = 100\n")


def test_unknown_key_names_key_and_line():
    with pytest.raises(ConfigError) as exc:
        parse_config_text("levels = 2, 2\n# comment\nbiass = 0.8\n", "trial.cfg")
    msg = str(exc.value)
    assert "'biass'" in msg and "trial.cfg:3" in msg


def test_type_error_names_line():
    with pytest.raises(ConfigError) as exc:
        parse_config_text("levels = 2, 2\nn = six hundred\n", "x.cfg")
    assert "x.cfg:2" in str(exc.value) and "'n'" in str(exc.value)


@pytest.mark.parametrize("text", ["levels = 2, 2\nlevels = 2, 3\n", "levels 2 2\n",
                                  "levels = 2, 2\ntests = T_X\n",
                                  "levels = 2, 2\nprocedure = coin\n",
                                  "levels = 2, 2\nreplications = 0\n",
                                  "levels = 2, 2\ntests = T_PL\n",
                                  "levels = 2, 2\nworking_model = 3\n"])
def test_malformed_configs(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_value_grammar():
    cfg = parse_config_text("levels = 2 3\nprevalence = 1/2, 1/2; 1/4, 1/2, 1/4\n"
                            "log_baseline = ln(0.015)\ncovariate_log_hr = ln(3), 0\n"
                            "followup_months = inf\ncensor_hazard = 0\n")
    assert cfg.spec.level_probabilities(2) == pytest.approx([0.25, 0.5, 0.25])
    assert cfg.hazard.log_baseline == pytest.approx(math.log(0.015))
    assert cfg.hazard.covariate_log_hr == pytest.approx((math.log(3), 0.0))
    assert math.isinf(cfg.design.followup_months)


def test_case2_preset_matches_setup():
    cfg = load_preset("case2")
    spec, proc, model, design = two_factor_setup(2)
    assert cfg.spec.levels == spec.levels
    assert cfg.procedure == proc
    assert cfg.hazard.log_baseline == pytest.approx(model.log_baseline, abs=1e-15)
    assert cfg.hazard.covariate_log_hr == pytest.approx(model.covariate_log_hr, abs=1e-15)
    assert cfg.design == design
    assert cfg.hazard.theta == 0 and harness.THETA_ALT["case2"] == math.log(0.7)


def test_four_factor_preset_matches_setup():
    cfg = load_preset("four_factor")
    spec, proc, model, design = four_factor_setup()
    assert cfg.spec.levels == spec.levels and cfg.procedure == proc
    assert cfg.hazard.covariate_log_hr == pytest.approx(model.covariate_log_hr, abs=1e-15)
    assert cfg.design == design and cfg.partition == (1, 2)


def test_unknown_preset():
    with pytest.raises(ConfigError):
        load_preset("case9")


def test_config_file_and_relative_cov_file(tmp_path):
    cov = build_cor_matrix((2, 2)).matrix
    with open(tmp_path / "cov.csv", "w", newline="") as fh:
        csv.writer(fh).writerows([[str(Fraction(x) / 4) for x in row] for row in cov])
    cfg_path = tmp_path / "run.cfg"
    cfg_path.write_text("levels = 2, 2\ncov_source = file\ncov_file = cov.csv\n")
    cfg = load_config(cfg_path)
    res = resolve_cov(cfg)
    np.testing.assert_allclose(res.cov, 0.25 * build_cor_matrix((2, 2)).to_numpy())
    cfg_path.write_text("levels = 2, 2\ncov_source = file\ncov_file = nope.csv\n")
    with pytest.raises(ConfigError, match="nope.csv"):
        load_config(cfg_path)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")


def test_cov_file_dimension_checked(tmp_path):
    (tmp_path / "c.csv").write_text("1,0\n0,1\n")
    cfg = parse_config_text(f"levels = 2, 3\ncov_source = file\ncov_file = {tmp_path / 'c.csv'}\n")
    with pytest.raises(ValueError, match="expected 6"):
        resolve_cov(cfg)


def test_analytic_cov_uses_given_sigma2():
    cfg = parse_config_text("levels = 2, 2\nsigma2 = 0.24\n")
    res = resolve_cov(cfg)
    np.testing.assert_allclose(res.cov, 0.24 * build_cor_matrix((2, 2)).to_numpy())
    with pytest.raises(ValueError):
        resolve_cov(parse_config_text("levels = 2, 2\nprocedure = complete\n"))


def test_threads_env(monkeypatch):
    monkeypatch.setenv(harness.THREADS_ENV, "3")
    assert harness.default_threads() == 3
    assert parse_config_text("levels = 2, 2\n").threads == 3
    monkeypatch.setenv(harness.THREADS_ENV, "many")
    with pytest.raises(ConfigError):
        harness.default_threads()
    monkeypatch.delenv(harness.THREADS_ENV)
    assert harness.default_threads() == 1


def _small_cfg(**over):
    cfg = load_preset("case2", replications=12, sigma2=0.235)
    return harness.replace(cfg, design=harness.replace(cfg.design, n=200),
                           tests=("T_L", "T_SL", "T_S", "T_RL", "T_RS"), **over)


def test_simulation_same_at_any_thread_count(tmp_path):
    a = run_simulation(_small_cfg(threads=1))
    b = run_simulation(_small_cfg(threads=3))
    write_simulation(a, tmp_path / "a")
    write_simulation(b, tmp_path / "b")
    for name in ("per_replication.csv", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_simulation_outputs(tmp_path):
    res = run_simulation(_small_cfg())
    per_rep, summary = write_simulation(res, tmp_path)
    rows = list(csv.DictReader(open(per_rep)))
    assert len(rows) == 12 * 5
    assert list(rows[0]) == list(harness.PER_REP_COLUMNS)
    summ = {r["test"]: r for r in csv.DictReader(open(summary))}
    assert set(summ) == {"T_L", "T_SL", "T_S", "T_RL", "T_RS"}
    assert summ["T_L"]["quantity"] == "type_i_error"
    assert summ["T_RL"]["ratio_GtG_psi_median"] != "" and summ["T_L"]["ratio_GtG_psi_median"] == ""
    rl = [r for r in rows if r["test"] == "T_RL"]
    rate = sum(r["reject"] == "1" for r in rl) / 12
    assert float(summ["T_RL"]["rate"]) == pytest.approx(rate)


def test_failed_tests_are_counted_not_fatal():
    cfg = _small_cfg()
    # strata with too few subjects per arm make the robust variance fail
    cfg = harness.replace(cfg, design=harness.replace(cfg.design, n=6), replications=5)
    summ = run_simulation(cfg).summaries()
    assert summ["T_RL"].failures > 0
    assert summ["T_RL"].replications == 5


def test_experiment_config_validation():
    spec = FactorSpec((2, 2))
    with pytest.raises(ValueError):
        ExperimentConfig(spec, master_seed=-1)
    with pytest.raises(ValueError):
        ExperimentConfig(spec, master_seed=2 ** 64)
    with pytest.raises(ValueError):
        ExperimentConfig(spec, cov_source="guess")


def test_reproduce_options_scale():
    opts = ReproduceOptions(scale=0.1)
    assert opts.sizes("table1", 600) == (500, 600)
    assert ReproduceOptions(scale=0.01).sizes("table1", 600) == (100, 300)
    assert ReproduceOptions(scale=1.0).sizes("table4", 1000) == (10000, 1000)
    with pytest.raises(ValueError):
        ReproduceOptions(scale=0)


def test_reproduce_a2_row(tmp_path):
    rows = reproduce("tableA2", ReproduceOptions(reps=300, per_stratum=300, rows=[(2, 2)]))
    got = {r.quantity: r for r in rows}
    assert got["sigma2"].published == pytest.approx(0.23509)
    assert got["sigma2"].simulated == pytest.approx(0.23509, abs=0.03)
    assert got["lambda_max"].simulated == 4.0 and got["lambda_max"].abs_diff == 0
    path = write_comparison(rows, tmp_path / "a2.csv")
    head = path.read_text().splitlines()[0]
    assert head == "table,row,quantity,simulated,published,abs_diff"


def test_reproduce_a1_theoretical_rows_exact():
    rows = reproduce("tableA1", ReproduceOptions(reps=50, per_stratum=50, rows=[(2, 2, 2, 2)]))
    theo = [r for r in rows if r.quantity == "theoretical"]
    assert theo and all(r.abs_diff < 5e-6 for r in theo)


def test_reproduce_errors():
    with pytest.raises(ValueError):
        reproduce("table9", ReproduceOptions())
    with pytest.raises(ValueError, match="no published row"):
        reproduce("tableA2", ReproduceOptions(reps=10, rows=[(2, 2, 2)]))
