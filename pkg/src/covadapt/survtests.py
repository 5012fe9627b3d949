"""Log-rank and Cox score tests with robust variances for adaptive allocation.

All statistics are oriented so that a negative value favours arm 1 (fewer
events than expected); the one-sided level-0.025 test rejects when the
statistic falls below ``-z_{0.975}``. Tied event times use the Breslow
convention throughout: every subject with ``X_k >= t`` is at risk at ``t``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from .survival_sim import TrialDataset

log = logging.getLogger(__name__)

ALPHA_ONE_SIDED = 0.025
Z_CRIT = float(norm.ppf(1 - ALPHA_ONE_SIDED))


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class WorkingModel:
    """Cox working model covariates: dummy indicators of the listed factors.

    A factor with ``n`` levels contributes indicators of levels ``2..n``.
    An empty tuple gives ``W = 0``.
    """

    factors: tuple[int, ...] = ()

    def design(self, data: TrialDataset) -> np.ndarray:
        lv = data.levels
        cols = []
        for k in self.factors:
            for h in range(2, data.spec.levels[k - 1] + 1):
                cols.append((lv[:, k - 1] == h).astype(float))
        if not cols:
            return np.zeros((data.n, 0))
        return np.column_stack(cols)


@dataclass
class RobustComponents:
    psi_term: float
    G_hat: np.ndarray
    GtG: float
    GtCovG: float
    stratum_mean: np.ndarray
    stratum_var: np.ndarray
    stratum_size: np.ndarray

    @property
    def variance(self) -> float:
        return self.psi_term + self.GtCovG


@dataclass
class TestReport:
    name: str
    numerator: float
    variance_used: float
    n: int
    components: RobustComponents | None = None
    extra: dict = field(default_factory=dict)

    @property
    def statistic(self) -> float:
        return self.numerator / math.sqrt(self.variance_used)

    @property
    def p_one_sided(self) -> float:
        return float(norm.cdf(self.statistic))

    @property
    def p_two_sided(self) -> float:
        return float(2 * norm.sf(abs(self.statistic)))

    @property
    def rejected(self) -> bool:
        return self.statistic < -Z_CRIT


# --- risk-set machinery -------------------------------------------------

class _RiskSets:
    """Sums over ``{k : X_k >= t}`` evaluated at arbitrary times ``t``."""

    def __init__(self, time: np.ndarray):
        self.order = np.argsort(time, kind="stable")
        self.sorted_time = time[self.order]

    def tail_sums(self, values: np.ndarray, at: np.ndarray) -> np.ndarray:
        v = values[self.order]
        tail = np.concatenate((np.cumsum(v[::-1], axis=0)[::-1], np.zeros((1,) + v.shape[1:])))
        return tail[np.searchsorted(self.sorted_time, at, side="left")]


def _head_sums(time: np.ndarray, values: np.ndarray, at: np.ndarray) -> np.ndarray:
    """Sums over ``{j : X_j <= t}`` of ``values`` evaluated at ``at``."""
    order = np.argsort(time, kind="stable")
    head = np.concatenate(([0.0], np.cumsum(values[order])))
    return head[np.searchsorted(time[order], at, side="right")]


def log_partial_likelihood(data: TrialDataset, w: np.ndarray, theta: float,
                           beta: np.ndarray) -> float:
    eta = theta * data.arm + (w @ beta if w.shape[1] else 0.0)
    ev = data.event == 1
    rs = _RiskSets(data.time)
    s0 = rs.tail_sums(np.exp(eta), data.time[ev])
    return float(np.sum(eta[ev] - np.log(s0)))


def _beta_score_info(data: TrialDataset, w: np.ndarray, beta: np.ndarray):
    r = np.exp(w @ beta)
    ev = data.event == 1
    t = data.time[ev]
    rs = _RiskSets(data.time)
    s0 = rs.tail_sums(r, t)
    s1 = rs.tail_sums(r[:, None] * w, t)
    s2 = rs.tail_sums(r[:, None, None] * w[:, :, None] * w[:, None, :], t)
    mean = s1 / s0[:, None]
    grad = np.sum(w[ev] - mean, axis=0)
    info = np.sum(s2 / s0[:, None, None] - mean[:, :, None] * mean[:, None, :], axis=0)
    return grad, info


def fit_beta0(data: TrialDataset, model: WorkingModel, tol: float = 1e-8,
              max_iter: int = 50) -> np.ndarray:
    """Maximum partial likelihood estimate of beta with theta fixed at 0.

    Newton-Raphson from zero with step halving; stops once the score's
    sup-norm is at most ``tol``.
    """
    w = model.design(data)
    if w.shape[1] == 0:
        return np.zeros(0)
    if not np.any(data.event):
        raise ValueError("no events")
    beta = np.zeros(w.shape[1])
    loglik = log_partial_likelihood(data, w, 0.0, beta)
    for _ in range(max_iter):
        grad, info = _beta_score_info(data, w, beta)
        if np.max(np.abs(grad)) <= tol:
            return beta
        try:
            step = np.linalg.solve(info, grad)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError("singular information matrix") from exc
        if not np.all(np.isfinite(step)):
            raise ConvergenceError("singular information matrix")
        for _ in range(30):
            cand = beta + step
            new = log_partial_likelihood(data, w, 0.0, cand)
            if new >= loglik - 1e-12 * abs(loglik):
                break
            step = step / 2
        beta, loglik = cand, new
    grad, _ = _beta_score_info(data, w, beta)
    if np.max(np.abs(grad)) <= tol:
        return beta
    raise ConvergenceError(f"Newton-Raphson did not converge in {max_iter} iterations")


def _weights(data: TrialDataset, model: WorkingModel, beta: np.ndarray) -> np.ndarray:
    w = model.design(data)
    return np.exp(w @ beta) if w.shape[1] else np.ones(data.n)


def score_numerator(data: TrialDataset, risk_weight: np.ndarray) -> float:
    """U_theta(0, beta): sum over events of I_i - S1/S0 at the event time."""
    ev = data.event == 1
    t = data.time[ev]
    rs = _RiskSets(data.time)
    s0 = rs.tail_sums(risk_weight, t)
    s1 = rs.tail_sums(risk_weight * data.arm, t)
    return float(np.sum(data.arm[ev] - s1 / s0))


def residuals_O(data: TrialDataset, risk_weight: np.ndarray) -> np.ndarray:
    """Per-subject score residuals with risk weights ``exp(beta' W_i)``.

    O_i = delta_i (I_i - Ibar(X_i))
          - r_i sum_{j: X_j <= X_i} delta_j (I_i - Ibar(X_j)) / sum_{k at risk} r_k
    where ``Ibar = S1 / S0``. With unit weights this is the log-rank
    residual.
    """
    ev = data.event == 1
    rs = _RiskSets(data.time)
    s0 = rs.tail_sums(risk_weight, data.time)
    ibar = rs.tail_sums(risk_weight * data.arm, data.time) / s0
    a = np.where(ev, 1.0 / s0, 0.0)
    b = np.where(ev, ibar / s0, 0.0)
    cum_a = _head_sums(data.time, a, data.time)
    cum_b = _head_sums(data.time, b, data.time)
    arm = data.arm.astype(float)
    return ev * (arm - ibar) - risk_weight * (arm * cum_a - cum_b)


def residuals_within(data: TrialDataset, labels: np.ndarray) -> np.ndarray:
    """Log-rank residuals computed separately inside each analysis stratum."""
    out = np.zeros(data.n)
    for g in np.unique(labels):
        idx = np.flatnonzero(labels == g)
        sub = _subset(data, idx)
        out[idx] = residuals_O(sub, np.ones(len(idx)))
    return out


def _subset(data: TrialDataset, idx: np.ndarray) -> TrialDataset:
    return TrialDataset(data.spec, data.strata[idx], data.arm[idx], data.time[idx],
                        data.event[idx])


def robust_variance(residuals: np.ndarray, strata: np.ndarray, arm: np.ndarray,
                    cov: np.ndarray, pool_sparse: bool = False) -> RobustComponents:
    """Stratified variance ``psi_term + G' Cov G`` from per-subject residuals.

    ``psi_term = N^-1 sum_z N_z (V_z1 + V_z0) / 2`` with ``V_zj`` the
    ``n - 1`` sample variance of the residuals in stratum ``z``, arm ``j``;
    ``G_z = sqrt(N_z / N) * E_z``.

    ``E_z`` is the stratum mean of the arm-oriented residual
    ``(2 I_i - 1) O_i``: an arm-0 residual carries the factor
    ``0 - S1/S0``, so it estimates the negated arm-0 quantity.
    """
    cov = np.asarray(cov, dtype=float)
    n_strata = cov.shape[0]
    if cov.shape != (n_strata, n_strata) or not np.allclose(cov, cov.T):
        raise ValueError("covariance must be a symmetric square matrix")
    n = len(residuals)
    sizes = np.bincount(strata, minlength=n_strata)
    if len(sizes) > n_strata:
        raise ValueError("stratum codes exceed the covariance dimension")
    means = np.zeros(n_strata)
    var = np.zeros((n_strata, 2))
    for z in range(n_strata):
        if sizes[z] == 0:
            continue
        rz = residuals[strata == z]
        az = arm[strata == z]
        means[z] = np.mean(np.where(az == 1, rz, -rz))
        for j in (1, 0):
            cell = rz[az == j]
            if len(cell) < 2:
                if not pool_sparse:
                    raise ValueError(f"stratum {z} arm {j} has {len(cell)} subjects; need >= 2")
                log.info("pooling sparse cell: stratum %d arm %d", z, j)
                cell = rz
            var[z, 1 - j] = cell.var(ddof=1) if len(cell) > 1 else 0.0
    psi = float(np.sum(sizes * var.mean(axis=1)) / n)
    g = np.sqrt(sizes / n) * means
    return RobustComponents(psi, g, float(g @ g), float(g @ cov @ g), means, var, sizes)


# --- tests --------------------------------------------------------------

def logrank_parts(data: TrialDataset):
    """Log-rank numerator U and variance sum from at-risk counts."""
    ev = data.event == 1
    t = data.time[ev]
    rs = _RiskSets(data.time)
    y = rs.tail_sums(np.ones(data.n), t)
    y1 = rs.tail_sums(data.arm.astype(float), t)
    u = float(np.sum(data.arm[ev] - y1 / y))
    v = float(np.sum(y1 * (y - y1) / y ** 2))
    return u, v


def logrank_test(data: TrialDataset) -> TestReport:
    u, v = logrank_parts(data)
    if v <= 0:
        raise ValueError("log-rank variance is zero")
    return TestReport("T_L", u / math.sqrt(data.n), v / data.n, data.n)


def stratified_logrank_test(data: TrialDataset, labels: np.ndarray, name: str = "T_SL") -> TestReport:
    """Sum of per-stratum log-rank numerators over the sum of their variances."""
    labels = np.asarray(labels)
    u_tot = v_tot = 0.0
    for g in np.unique(labels):
        sub = _subset(data, np.flatnonzero(labels == g))
        if not np.any(sub.event):
            log.info("analysis stratum %s has no events; contributes zero", g)
            continue
        u, v = logrank_parts(sub)
        u_tot += u
        v_tot += v
    if v_tot <= 0:
        raise ValueError("stratified log-rank variance is zero")
    return TestReport(name, u_tot / math.sqrt(data.n), v_tot / data.n, data.n)


def lin_wei_variance(residuals: np.ndarray) -> float:
    return float(np.mean(residuals ** 2))


def score_test(data: TrialDataset, model: WorkingModel) -> TestReport:
    """Cox score test for theta = 0 with the Lin-Wei sandwich variance."""
    beta = fit_beta0(data, model)
    r = _weights(data, model, beta)
    u = score_numerator(data, r)
    b = lin_wei_variance(residuals_O(data, r))
    if b <= 0:
        raise ValueError("score variance is zero")
    return TestReport("T_S", u / math.sqrt(data.n), b, data.n, extra={"beta0": beta})


def partition_labels(data: TrialDataset, factors) -> np.ndarray:
    """Analysis-stratum label of each subject from a subset of factors."""
    factors = tuple(factors)
    if not factors:
        return np.zeros(data.n, dtype=np.int64)
    lv = data.levels
    out = np.zeros(data.n, dtype=np.int64)
    for k in factors:
        out = out * data.spec.levels[k - 1] + (lv[:, k - 1] - 1)
    return out


def robust_tests(data: TrialDataset, model: WorkingModel, cov: np.ndarray,
                 partition=None, pool_sparse: bool = False) -> dict[str, TestReport]:
    """T_RS, T_RL and (when ``partition`` is given) T_RPL.

    ``partition`` is a tuple of 1-based factors defining the analysis strata
    of the partially stratified test.
    """
    out = {}
    beta = fit_beta0(data, model)
    r = _weights(data, model, beta)
    comp = robust_variance(residuals_O(data, r), data.strata, data.arm, cov, pool_sparse)
    out["T_RS"] = TestReport("T_RS", score_numerator(data, r) / math.sqrt(data.n),
                             comp.variance, data.n, comp, {"beta0": beta})
    u, _ = logrank_parts(data)
    comp = robust_variance(residuals_O(data, np.ones(data.n)), data.strata, data.arm, cov,
                           pool_sparse)
    out["T_RL"] = TestReport("T_RL", u / math.sqrt(data.n), comp.variance, data.n, comp)
    if partition is not None:
        labels = partition_labels(data, partition)
        num = stratified_logrank_test(data, labels, "T_PL").numerator
        comp = robust_variance(residuals_within(data, labels), data.strata, data.arm, cov,
                               pool_sparse)
        out["T_RPL"] = TestReport("T_RPL", num, comp.variance, data.n, comp)
    return out


def diagnostics(report: TestReport) -> dict[str, float]:
    """Ratios reported alongside each test, per replication.

    ``ratio_GtG_psi`` compares G'G with the within-stratum term and
    ``ratio_GtCovG_GtG`` is NaN when G'G is zero.
    """
    c = report.components
    if c is None:
        raise ValueError(f"{report.name} carries no variance components")
    n = report.n
    return {
        "ratio_GtG_psi": c.GtG / c.psi_term if c.psi_term > 0 else math.nan,
        "ratio_GtCovG_GtG": c.GtCovG / c.GtG if c.GtG > 0 else math.nan,
        "N_psi": n * c.psi_term,
        "N_variance": n * report.variance_used,
    }
