"""Right-censored exponential survival trials under covariate-adaptive allocation.

Time is in months. Subjects enter uniformly over the enrollment window and
are allocated in entry order. Administrative censoring is measured from
study start, random censoring from each subject's entry.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .randomization import ProcedureConfig, allocate
from .strata import FactorSpec, level_matrix, sample_strata


@dataclass(frozen=True)
class HazardModel:
    """log hazard = log_baseline + sum of factor effects + theta * arm.

    ``covariate_log_hr[k]`` applies when factor ``k + 1`` sits at level
    ``high_levels[k]`` (level 2 by default).
    """

    log_baseline: float
    covariate_log_hr: tuple[float, ...] = ()
    theta: float = 0.0
    high_levels: tuple[int, ...] | None = None

    def __post_init__(self):
        vals = (self.log_baseline, self.theta, *self.covariate_log_hr)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("hazard model parameters must be finite")

    def stratum_log_hazard(self, spec: FactorSpec) -> np.ndarray:
        """Control-arm log hazard of every stratum."""
        lv = level_matrix(spec.levels) + 1
        if len(self.covariate_log_hr) not in (0, spec.num_factors):
            raise ValueError("need one log hazard ratio per factor")
        high = self.high_levels or (2,) * spec.num_factors
        out = np.full(spec.n_strata, float(self.log_baseline))
        for k, beta in enumerate(self.covariate_log_hr):
            out += beta * (lv[:, k] == high[k])
        return out


@dataclass(frozen=True)
class TrialDesign:
    n: int
    enrollment_months: float
    followup_months: float = math.inf
    censor_hazard: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a trial needs at least two subjects")
        if self.followup_months < self.enrollment_months:
            raise ValueError("follow-up must cover the enrollment window")
        if self.censor_hazard < 0:
            raise ValueError("censoring hazard must be non-negative")


@dataclass
class TrialDataset:
    """One simulated trial; arrays are indexed by subject in entry order."""

    spec: FactorSpec
    strata: np.ndarray
    arm: np.ndarray
    time: np.ndarray
    event: np.ndarray
    entry: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.time)

    @property
    def levels(self) -> np.ndarray:
        """``(N, M)`` 1-based factor levels."""
        return level_matrix(self.spec.levels)[self.strata] + 1

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["subject", "stratum", "arm", "time", "event"])
            for i in range(self.n):
                w.writerow([i, int(self.strata[i]), int(self.arm[i]),
                            repr(float(self.time[i])), int(self.event[i])])

    @classmethod
    def from_csv(cls, path, spec: FactorSpec) -> "TrialDataset":
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        return cls(spec,
                   np.array([int(r["stratum"]) for r in rows], dtype=np.int64),
                   np.array([int(r["arm"]) for r in rows], dtype=np.int8),
                   np.array([float(r["time"]) for r in rows]),
                   np.array([int(r["event"]) for r in rows], dtype=np.int8))


def simulate_trial(spec: FactorSpec, cfg: ProcedureConfig, model: HazardModel,
                   design: TrialDesign, rng: np.random.Generator) -> TrialDataset:
    """Simulate one trial.

    Draw order from ``rng``: entry times, stratum codes, allocation
    uniforms, survival times, censoring times.
    """
    n = design.n
    entry = np.sort(rng.uniform(0.0, design.enrollment_months, n))
    strata = sample_strata(spec, n, rng)
    arms = allocate(spec, cfg, strata, rng).arms
    rate = np.exp(model.stratum_log_hazard(spec)[strata] + model.theta * arms)
    survival = rng.exponential(1.0 / rate)
    if design.censor_hazard > 0:
        censor = rng.exponential(1.0 / design.censor_hazard, n)
    else:
        censor = np.full(n, np.inf)
    admin = design.followup_months - entry
    time = np.minimum(np.minimum(survival, censor), admin)
    event = (survival <= np.minimum(censor, admin)).astype(np.int8)
    return TrialDataset(spec, strata, arms, time, event, entry)


CASE_LOG_HR = {1: (0.0, 0.0), 2: (math.log(10), math.log(5))}


def two_factor_setup(case: int, theta: float = 0.0, n: int = 600):
    """Two binary factors, N = 600 oncology-style design (cases 1 and 2)."""
    spec = FactorSpec((2, 2))
    model = HazardModel(math.log(0.0625), CASE_LOG_HR[case], theta)
    design = TrialDesign(n, 29.0, 36.0, 0.01)
    return spec, ProcedureConfig("pocock_simon", 0.9), model, design


def four_factor_setup(theta: float = 0.0, n: int = 1000):
    """Four binary factors, N = 1000, administrative censoring only."""
    spec = FactorSpec((2, 2, 2, 2))
    model = HazardModel(math.log(0.015), (math.log(3), math.log(2), math.log(2), math.log(2)), theta)
    design = TrialDesign(n, 30.0, 50.0, 0.0)
    return spec, ProcedureConfig("pocock_simon", 0.9), model, design


def simulate_trial_4factor(rng: np.random.Generator, theta: float = 0.0, n: int = 1000,
                           cfg: ProcedureConfig | None = None) -> TrialDataset:
    spec, default_cfg, model, design = four_factor_setup(theta, n)
    return simulate_trial(spec, cfg or default_cfg, model, design, rng)
