"""Experiment configuration, replication driver and table reproduction.

Configuration files are flat ``key = value`` lines; ``#`` starts a comment
and blank lines are ignored. Lists are comma separated. Prevalence vectors
are separated by ``;`` and accept fractions (``1/4, 1/2, 1/4``). Float
values may be written ``ln(x)``. Only ``levels`` is required; see
:data:`CONFIG_KEYS` for the remaining keys and their defaults.
"""
from __future__ import annotations

import csv
import logging
import math
import os
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from . import published
from .mc_lab import estimate_cov, collect_imbalances, mev_product
from .randomization import KINDS, ProcedureConfig
from .rng import map_replications, replication_rng
from .strata import FactorSpec
from .survival_sim import HazardModel, TrialDataset, TrialDesign, simulate_trial
from .survtests import (ConvergenceError, TestReport, WorkingModel, diagnostics,
                        logrank_test, partition_labels, robust_tests, score_test,
                        stratified_logrank_test)
from .theory import build_cor_matrix, equal_prevalence_class_value, lambda_max

log = logging.getLogger(__name__)

TEST_NAMES = ("T_L", "T_SL", "T_PL", "T_S", "T_RL", "T_RS", "T_RPL")
ROBUST = ("T_RL", "T_RS", "T_RPL")
COV_SOURCES = ("analytic", "monte-carlo", "file")
THREADS_ENV = "COVADAPT_THREADS"


class ConfigError(ValueError):
    pass


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV}={raw!r} is not an integer") from None
    return max(n, 1)


# --- value parsers --------------------------------------------------------

def _float(s: str) -> float:
    m = re.fullmatch(r"ln\((.+)\)", s.replace(" ", ""))
    if m:
        return math.log(float(Fraction(m.group(1))))
    if s.strip().lower() in ("inf", "infinity"):
        return math.inf
    return float(Fraction(s.strip())) if "/" in s else float(s)


def _int(s: str) -> int:
    return int(s.strip())


def _list(item: Callable) -> Callable:
    def parse(s: str):
        parts = [p for p in re.split(r"[,\s]+", s.strip()) if p]
        return tuple(item(p) for p in parts)
    return parse


def _prevalence(s: str):
    return tuple(tuple(str(Fraction(x.strip())) for x in vec.split(",") if x.strip())
                 for vec in s.split(";"))


def _choice(options) -> Callable:
    def parse(s: str):
        s = s.strip()
        if s not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return s
    return parse


def _optional(item: Callable) -> Callable:
    def parse(s: str):
        return None if s.strip().lower() in ("", "none") else item(s)
    return parse


def _tests(s: str):
    names = _list(str)(s)
    bad = [n for n in names if n not in TEST_NAMES]
    if bad:
        raise ValueError(f"unknown test {bad[0]!r}; expected among {', '.join(TEST_NAMES)}")
    return names


# key -> (parser, default); levels has no default
CONFIG_KEYS: dict[str, tuple[Callable, object]] = {
    "levels": (_list(_int), None),
    "prevalence": (_optional(_prevalence), None),
    "procedure": (_choice(KINDS), "pocock_simon"),
    "bias": (_float, 0.9),
    "imbalance_measure": (_choice(("squared", "absolute")), "squared"),
    "block_size": (_int, 4),
    "mti": (_int, 3),
    "urn_alpha": (_int, 1),
    "urn_beta": (_int, 1),
    "log_baseline": (_float, math.log(0.0625)),
    "covariate_log_hr": (_list(_float), ()),
    "theta": (_float, 0.0),
    "n": (_int, 600),
    "enrollment_months": (_float, 29.0),
    "followup_months": (_float, 36.0),
    "censor_hazard": (_float, 0.01),
    "tests": (_tests, ("T_L", "T_SL", "T_S", "T_RL", "T_RS")),
    "working_model": (_optional(_list(_int)), None),
    "partition": (_optional(_list(_int)), None),
    "cov_source": (_choice(COV_SOURCES), "analytic"),
    "sigma2": (_optional(_float), None),
    "cov_file": (_optional(str.strip), None),
    "mc_per_stratum": (_int, 500),
    "mc_replications": (_int, 1000),
    "replications": (_int, 1000),
    "master_seed": (_int, 20240601),
    "threads": (_int, None),
    "output_dir": (str.strip, "covadapt_out"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    spec: FactorSpec
    procedure: ProcedureConfig = field(default_factory=ProcedureConfig)
    hazard: HazardModel = field(default_factory=lambda: HazardModel(math.log(0.0625)))
    design: TrialDesign = field(default_factory=lambda: TrialDesign(600, 29.0, 36.0, 0.01))
    tests: tuple[str, ...] = ("T_L", "T_SL", "T_S", "T_RL", "T_RS")
    working_model: tuple[int, ...] | None = None
    partition: tuple[int, ...] | None = None
    cov_source: str = "analytic"
    sigma2: float | None = None
    cov_file: str | None = None
    mc_per_stratum: int = 500
    mc_replications: int = 1000
    replications: int = 1000
    master_seed: int = 20240601
    threads: int = 1
    output_dir: str = "covadapt_out"

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.cov_source not in COV_SOURCES:
            raise ValueError(f"cov_source must be one of {COV_SOURCES}")
        m = self.spec.num_factors
        for name in ("working_model", "partition"):
            fac = getattr(self, name)
            if fac is not None and any(not 1 <= k <= m for k in fac):
                raise ValueError(f"{name} refers to a factor outside 1..{m}")
        if {"T_PL", "T_RPL"} & set(self.tests) and self.partition is None:
            raise ValueError("T_PL and T_RPL need a partition")

    @property
    def model(self) -> WorkingModel:
        if self.working_model is None:
            return WorkingModel(tuple(range(1, self.spec.num_factors + 1)))
        return WorkingModel(self.working_model)

    @property
    def needs_cov(self) -> bool:
        return bool(set(ROBUST) & set(self.tests))


def config_from_values(values: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Build a config from parsed key values (missing keys take defaults)."""
    v = {k: d for k, (_, d) in CONFIG_KEYS.items()}
    v.update(values)
    if v["levels"] is None:
        raise ConfigError("missing required key 'levels'")
    spec = FactorSpec(v["levels"], v["prevalence"])
    proc = ProcedureConfig(v["procedure"], v["bias"], v["imbalance_measure"], v["block_size"],
                           v["mti"], v["urn_alpha"], v["urn_beta"])
    hazard = HazardModel(v["log_baseline"], v["covariate_log_hr"], v["theta"])
    hazard.stratum_log_hazard(spec)
    design = TrialDesign(v["n"], v["enrollment_months"], v["followup_months"], v["censor_hazard"])
    cov_file = v["cov_file"]
    if cov_file is not None and base_dir is not None and not Path(cov_file).is_absolute():
        cov_file = str(base_dir / cov_file)
    threads = v["threads"] if v["threads"] is not None else default_threads()
    return ExperimentConfig(spec, proc, hazard, design, v["tests"], v["working_model"],
                            v["partition"], v["cov_source"], v["sigma2"], cov_file,
                            v["mc_per_stratum"], v["mc_replications"], v["replications"],
                            v["master_seed"], threads, v["output_dir"])


def parse_config_text(text: str, source: str = "<config>", base_dir: Path | None = None
                      ) -> ExperimentConfig:
    values, lines = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}: {raw.strip()!r}"
        if "=" not in line:
            raise ConfigError(f"{where}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key][0](value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from None
        lines[key] = where
    try:
        cfg = config_from_values(values, base_dir)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None
    if cfg.needs_cov and cfg.cov_source == "file":
        if cfg.cov_file is None:
            raise ConfigError(f"{source}: cov_source = file needs cov_file")
        if not Path(cfg.cov_file).exists():
            raise ConfigError(f"{lines['cov_file']}: file not found: {cfg.cov_file}")
    return cfg


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text(), str(path), path.parent)


PRESETS = ("case1", "case2", "four_factor")


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return resources.files("covadapt").joinpath("presets", f"{name}.cfg").read_text()


def load_preset(name: str, **overrides) -> ExperimentConfig:
    cfg = parse_config_text(preset_text(name), f"preset:{name}")
    return replace(cfg, **overrides) if overrides else cfg


# --- covariance of normalized imbalances ----------------------------------

@dataclass
class CovResolution:
    cov: np.ndarray
    source: str
    sigma2: float | None = None


def read_matrix_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = [[float(Fraction(x)) for x in r] for r in csv.reader(fh) if r]
    a = np.array(rows)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{path}: covariance must be a square matrix")
    return a


def resolve_cov(cfg: ExperimentConfig) -> CovResolution:
    """Covariance plugged into the robust variances."""
    spec = cfg.spec
    if cfg.cov_source == "file":
        cov = read_matrix_csv(cfg.cov_file)
        if cov.shape[0] != spec.n_strata:
            raise ValueError(f"covariance is {cov.shape[0]}x{cov.shape[0]}, "
                             f"expected {spec.n_strata} strata")
        return CovResolution(cov, f"file:{cfg.cov_file}")
    if cfg.cov_source == "monte-carlo":
        samples = collect_imbalances(spec, cfg.procedure, cfg.mc_per_stratum * spec.n_strata,
                                     cfg.mc_replications, cfg.master_seed, cfg.threads)
        est = estimate_cov(samples)
        return CovResolution(est.cov_hat, "monte-carlo", est.sigma2_hat)
    if cfg.procedure.kind != "pocock_simon":
        raise ValueError("the analytic correlation applies to Pocock-Simon minimization; "
                         "use cov_source = monte-carlo")
    cor = build_cor_matrix(spec).to_numpy()
    sigma2 = cfg.sigma2
    if sigma2 is None:
        samples = collect_imbalances(spec, cfg.procedure, cfg.mc_per_stratum * spec.n_strata,
                                     cfg.mc_replications, cfg.master_seed, cfg.threads)
        sigma2 = estimate_cov(samples).sigma2_hat
        log.info("Monte Carlo sigma_z^2 = %.5f", sigma2)
    return CovResolution(sigma2 * cor, "analytic", sigma2)


# --- simulation driver ------------------------------------------------------

def analyze(data: TrialDataset, cfg: ExperimentConfig, cov: np.ndarray | None
            ) -> dict[str, TestReport | None]:
    """Run the configured tests on one dataset; a failed test maps to None."""
    out: dict[str, TestReport | None] = {}
    wanted = set(cfg.tests)
    labels = partition_labels(data, cfg.partition) if cfg.partition is not None else None

    def attempt(fn):
        try:
            return fn()
        except (ValueError, ConvergenceError, np.linalg.LinAlgError) as exc:
            log.info("test failed: %s", exc)
            return None

    if "T_L" in wanted:
        out["T_L"] = attempt(lambda: logrank_test(data))
    if "T_SL" in wanted:
        out["T_SL"] = attempt(lambda: stratified_logrank_test(data, data.strata))
    if "T_PL" in wanted:
        out["T_PL"] = attempt(lambda: stratified_logrank_test(data, labels, "T_PL"))
    if "T_S" in wanted:
        out["T_S"] = attempt(lambda: score_test(data, cfg.model))
    if wanted & set(ROBUST):
        part = cfg.partition if "T_RPL" in wanted else None
        rob = attempt(lambda: robust_tests(data, cfg.model, cov, part))
        for name in ROBUST:
            if name in wanted:
                out[name] = rob.get(name) if rob else None
    return {name: out[name] for name in cfg.tests}


PER_REP_COLUMNS = ("replication", "test", "statistic", "numerator", "variance",
                   "psi_term", "GtG", "GtCovG", "reject")
DIAG_KEYS = ("ratio_GtG_psi", "ratio_GtCovG_GtG", "N_psi", "N_variance")


def _num(x) -> str:
    return "" if x is None else repr(float(x))


def report_row(r: int, name: str, rep: TestReport | None) -> dict:
    if rep is None:
        return {"replication": r, "test": name, "statistic": "", "numerator": "",
                "variance": "", "psi_term": "", "GtG": "", "GtCovG": "", "reject": ""}
    c = rep.components
    return {"replication": r, "test": name, "statistic": _num(rep.statistic),
            "numerator": _num(rep.numerator), "variance": _num(rep.variance_used),
            "psi_term": _num(c.psi_term if c else None), "GtG": _num(c.GtG if c else None),
            "GtCovG": _num(c.GtCovG if c else None), "reject": int(rep.rejected)}


@dataclass
class TestSummary:
    test: str
    replications: int
    failures: int
    rejections: int
    diagnostics: dict[str, tuple[float, float, float]]

    @property
    def rate(self) -> float:
        ok = self.replications - self.failures
        return self.rejections / ok if ok else math.nan


@dataclass
class SimulationResult:
    config: ExperimentConfig
    cov: CovResolution | None
    reports: list[dict[str, TestReport | None]]

    def summaries(self) -> dict[str, TestSummary]:
        out = {}
        for name in self.config.tests:
            reps = [r[name] for r in self.reports]
            ok = [x for x in reps if x is not None]
            diag = {}
            values = {"N_variance": [x.n * x.variance_used for x in ok]}
            if name in ROBUST:
                d = [diagnostics(x) for x in ok]
                for key in DIAG_KEYS:
                    values[key] = [row[key] for row in d]
            for key, vals in values.items():
                arr = np.array(vals, dtype=float)
                arr = arr[~np.isnan(arr)]
                diag[key] = ((float(np.median(arr)), float(arr.min()), float(arr.max()))
                             if arr.size else (math.nan,) * 3)
            out[name] = TestSummary(name, len(reps), len(reps) - len(ok),
                                    sum(x.rejected for x in ok), diag)
        return out


def run_simulation(cfg: ExperimentConfig, cov: CovResolution | None = None) -> SimulationResult:
    if cov is None and cfg.needs_cov:
        cov = resolve_cov(cfg)
    mat = cov.cov if cov is not None else None

    def one(r: int):
        data = simulate_trial(cfg.spec, cfg.procedure, cfg.hazard, cfg.design,
                              replication_rng(cfg.master_seed, r))
        return analyze(data, cfg, mat)

    reports = map_replications(one, range(cfg.replications), cfg.threads)
    return SimulationResult(cfg, cov, reports)


def write_simulation(result: SimulationResult, out_dir) -> tuple[Path, Path]:
    """Per-replication and summary CSVs; contents depend only on config and seed."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    per_rep = out / "per_replication.csv"
    with open(per_rep, "w", newline="") as fh:
        w = csv.DictWriter(fh, PER_REP_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r, reports in enumerate(result.reports):
            for name, rep in reports.items():
                w.writerow(report_row(r, name, rep))
    summary = out / "summary.csv"
    kind = "type_i_error" if result.config.hazard.theta == 0 else "power"
    header = ["test", "quantity", "rate", "rejections", "replications", "failures"]
    for key in DIAG_KEYS:
        header += [f"{key}_median", f"{key}_min", f"{key}_max"]
    with open(summary, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for s in result.summaries().values():
            row = [s.test, kind, _num(s.rate), s.rejections, s.replications, s.failures]
            for key in DIAG_KEYS:
                row += [_num(v) for v in s.diagnostics[key]] if key in s.diagnostics else ["", "", ""]
            w.writerow(row)
    return per_rep, summary


# --- reproduction of the published tables ---------------------------------

TARGETS = ("table1", "table2", "table3", "table4",
           "tableA1", "tableA2", "tableA3", "tableA4", "tableA5")
PUBLISHED_REPS = {"table1": 5000, "table2": 5000, "table3": 5000, "table4": 10000,
              "tableA1": 10000, "tableA2": 10000, "tableA3": 10000, "tableA4": 10000,
              "tableA5": 10000}
MIN_REPS = 100
A5_N = 500_000
THETA_ALT = {"case1": math.log(0.7), "case2": math.log(0.7), "four_factor": math.log(0.78)}


@dataclass
class ReproduceOptions:
    scale: float = 0.1
    reps: int | None = None
    per_stratum: int | None = None
    n: int | None = None
    rows: list[tuple[int, ...]] | None = None
    sigma2: float | None = None
    master_seed: int = 20240601
    threads: int = 1

    def __post_init__(self):
        if not 0 < self.scale <= 1:
            raise ValueError("scale must lie in (0, 1]")

    def sizes(self, target: str, full_n: int) -> tuple[int, int]:
        """Replications and sample size at this scale.

        The scale shrinks R first; once R would drop below ``MIN_REPS`` the
        rest of the reduction goes to N. Explicit overrides win.
        """
        r_full = PUBLISHED_REPS[target]
        r = max(MIN_REPS, math.ceil(r_full * self.scale))
        n_factor = min(1.0, self.scale * r_full / r)
        return (self.reps or r), max(2, round(full_n * n_factor))


@dataclass
class ComparisonRow:
    table: str
    row: str
    quantity: str
    simulated: float
    published: float | None

    @property
    def abs_diff(self) -> float | None:
        if self.published is None or math.isnan(self.simulated):
            return None
        return abs(self.simulated - self.published)


def _levels_label(levels) -> str:
    return " ".join(str(n) for n in levels)


def _selected(rows, available):
    if rows is None:
        return list(available)
    missing = [r for r in rows if r not in available]
    if missing:
        raise ValueError(f"no published row for levels {_levels_label(missing[0])}")
    return list(rows)


def _mc_estimate(levels, per_stratum, reps, opts, prevalence=None, n=None):
    spec = FactorSpec(levels, prevalence)
    total = n if n is not None else per_stratum * spec.n_strata
    samples = collect_imbalances(spec, ProcedureConfig(), total, reps, opts.master_seed,
                                 opts.threads)
    return spec, estimate_cov(samples)


def _reproduce_sigma_table(target: str, table: dict, opts: ReproduceOptions):
    out = []
    for levels in _selected(opts.rows, table):
        reps, per = opts.sizes(target, 500)
        spec, est = _mc_estimate(levels, opts.per_stratum or per, reps, opts)
        s2, lam, prod_ = table[levels]
        label = _levels_label(levels)
        out += [ComparisonRow(target, label, "sigma2", est.sigma2_hat, s2),
                ComparisonRow(target, label, "lambda_max", float(lambda_max(levels)), lam),
                ComparisonRow(target, label, "mev", mev_product(spec, est.sigma2_hat), prod_)]
    return out


def _reproduce_a1(opts: ReproduceOptions):
    out = []
    for levels in _selected(opts.rows, published.TABLE_A1):
        reps, per = opts.sizes("tableA1", 500)
        _, est = _mc_estimate(levels, opts.per_stratum or per, reps, opts)
        label = _levels_label(levels)
        for eps, (theo, sim) in published.TABLE_A1[levels].items():
            mask = sum(1 << k for k, e in enumerate(eps) if e)
            pattern = "".join(str(e) for e in eps)
            exact = float(equal_prevalence_class_value(levels, mask))
            out += [ComparisonRow("tableA1", f"{label} [{pattern}]", "theoretical", exact, theo),
                    ComparisonRow("tableA1", f"{label} [{pattern}]", "simulated",
                                  est.class_correlations[mask], sim)]
    return out


def _reproduce_a5(opts: ReproduceOptions):
    out = []
    rows = _selected(opts.rows, published.TABLE_A5) if opts.rows else list(published.TABLE_A5)
    for probs in rows:
        reps, n = opts.sizes("tableA5", A5_N)
        _, est = _mc_estimate((2, 3), None, reps, opts, (("1/2", "1/2"), probs), opts.n or n)
        out.append(ComparisonRow("tableA5", ",".join(probs), "mev", est.mev_hat,
                                 published.TABLE_A5[probs]))
    return out


def _scenario_config(preset: str, hyp: str, reps: int, opts: ReproduceOptions, **over):
    base = load_preset(preset)
    theta = THETA_ALT[preset] if hyp == "alt" else 0.0
    hazard = replace(base.hazard, theta=theta)
    return replace(base, hazard=hazard, replications=reps, master_seed=opts.master_seed,
                   threads=opts.threads, **over)


def _sigma2_for(preset: str, opts: ReproduceOptions) -> float:
    if opts.sigma2 is not None:
        return opts.sigma2
    base = load_preset(preset)
    target = "tableA2" if base.spec.num_factors == 2 else "tableA4"
    reps, per = opts.sizes(target, 500)
    _, est = _mc_estimate(base.spec.levels, opts.per_stratum or per, reps, opts)
    log.info("%s: Monte Carlo sigma_z^2 = %.5f", preset, est.sigma2_hat)
    return est.sigma2_hat


def _survival_rows(target, table, scenarios, tests, model, opts, quantities):
    out, sigma2 = [], {}
    reps, _ = opts.sizes(target, 1)
    for key in scenarios:
        preset, hyp = key if isinstance(key, tuple) else ("four_factor", key)
        if preset not in sigma2:
            sigma2[preset] = _sigma2_for(preset, opts)
        over = {"tests": tests, "sigma2": sigma2[preset], "cov_source": "analytic"}
        if model is not None:
            over["working_model"] = model
        cfg = _scenario_config(preset, hyp, reps, opts, **over)
        summ = run_simulation(cfg).summaries()
        label = f"{preset} {hyp}"
        pub = table[key]
        for name in tests:
            out.append(ComparisonRow(target, label, name, summ[name].rate, pub.get(name)))
        for qname, (test, diag) in quantities.items():
            out.append(ComparisonRow(target, label, qname, summ[test].diagnostics[diag][0],
                                     pub.get(qname)))
    return out


def reproduce(target: str, opts: ReproduceOptions) -> list[ComparisonRow]:
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}")
    if target == "tableA1":
        return _reproduce_a1(opts)
    if target in ("tableA2", "tableA3", "tableA4"):
        return _reproduce_sigma_table(target, getattr(published, target.replace("table", "TABLE_")),
                                      opts)
    if target == "tableA5":
        return _reproduce_a5(opts)
    two = [("case1", "null"), ("case1", "alt"), ("case2", "null"), ("case2", "alt")]
    if target == "table1":
        q = {"ratio_GtCovG_GtG": ("T_RL", "ratio_GtCovG_GtG"),
             "ratio_GtG_psi": ("T_RL", "ratio_GtG_psi"), "N_psi": ("T_RL", "N_psi"),
             "N_var_L": ("T_L", "N_variance"), "N_B_RL": ("T_RL", "N_variance")}
        return _survival_rows(target, published.TABLE_1, two, ("T_L", "T_RL", "T_SL"),
                              None, opts, q)
    score_q = {"ratio_GtCovG_GtG": ("T_RS", "ratio_GtCovG_GtG"),
               "ratio_GtG_psi": ("T_RS", "ratio_GtG_psi"), "N_psi": ("T_RS", "N_psi"),
               "N_B": ("T_S", "N_variance"), "N_B_RS": ("T_RS", "N_variance")}
    if target == "table2":
        return _survival_rows(target, published.TABLE_2, two, ("T_S", "T_RS"), (1, 2), opts,
                              score_q)
    if target == "table3":
        return _survival_rows(target, published.TABLE_3, two[2:], ("T_S", "T_RS"), (1,), opts,
                              score_q)
    return _survival_rows(target, published.TABLE_4, ["null", "alt"],
                          ("T_S", "T_RS", "T_L", "T_PL", "T_RPL"), (1, 2), opts, {})


def write_comparison(rows: list[ComparisonRow], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["table", "row", "quantity", "simulated", "published", "abs_diff"])
        for r in rows:
            w.writerow([r.table, r.row, r.quantity, _num(r.simulated), _num(r.published),
                        _num(r.abs_diff)])
    return path
