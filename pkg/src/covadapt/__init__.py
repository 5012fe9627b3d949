"""Covariate-adaptive randomization laboratory for time-to-event trials.

Pocock-Simon minimization and reference allocation procedures, the exact
equal-prevalence correlation of normalized stratum imbalances and its
spectrum, Monte Carlo estimation of that structure, and the log-rank and
Cox score test family with robust variances.
"""
from .strata import FactorSpec, StratumIndex, SubjectCovariates
from .randomization import AllocationState, ProcedureConfig, allocate, run_allocation
from .theory import CorrelationSpec, build_cor_matrix, spectrum
from .mc_lab import estimate_cov, estimate_sigma2
from .survival_sim import HazardModel, TrialDataset, TrialDesign, simulate_trial
from .survtests import (TestReport, WorkingModel, logrank_test, robust_tests, score_test,
                        stratified_logrank_test)

__version__ = "0.1.0"

__all__ = [
    "FactorSpec", "StratumIndex", "SubjectCovariates",
    "AllocationState", "ProcedureConfig", "allocate", "run_allocation",
    "CorrelationSpec", "build_cor_matrix", "spectrum",
    "estimate_cov", "estimate_sigma2",
    "HazardModel", "TrialDataset", "TrialDesign", "simulate_trial",
    "TestReport", "WorkingModel", "logrank_test", "robust_tests", "score_test",
    "stratified_logrank_test",
]
