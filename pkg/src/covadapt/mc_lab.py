"""Monte Carlo estimation of the covariance of normalized stratum imbalances."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .linalg import max_eigenvalue
from .randomization import ProcedureConfig, run_allocation
from .rng import map_replications, replication_rng
from .strata import FactorSpec, agreement_masks
from .theory import lambda_max

log = logging.getLogger(__name__)


@dataclass
class ImbalanceSamples:
    """End-of-randomization imbalances, one row per replication.

    ``imbalance`` holds D_N(z) and ``sizes`` holds N_z; ``normalized`` is
    D_N(z) / sqrt(N_z), NaN where a stratum received nobody.
    """

    spec: FactorSpec
    imbalance: np.ndarray
    sizes: np.ndarray

    @property
    def replications(self) -> int:
        return self.imbalance.shape[0]

    @property
    def normalized(self) -> np.ndarray:
        with np.errstate(invalid="ignore", divide="ignore"):
            d = self.imbalance / np.sqrt(self.sizes)
        d[self.sizes == 0] = np.nan
        return d


@dataclass
class CovEstimate:
    cov_hat: np.ndarray
    sigma2_hat: float
    sigma2_se: float
    class_correlations: dict[int, float]
    mev_hat: float
    replications: int


def collect_imbalances(spec: FactorSpec, cfg: ProcedureConfig, n: int, replications: int,
                       master_seed: int, threads: int = 1) -> ImbalanceSamples:
    if replications < 2:
        raise ValueError("need at least two replications")

    def one(r):
        alloc = run_allocation(spec, cfg, n, replication_rng(master_seed, r))
        return alloc.state.stratum_imbalance, alloc.state.counts.sum(axis=1)

    rows = map_replications(one, range(replications), threads)
    samples = ImbalanceSamples(spec, np.array([r[0] for r in rows]),
                               np.array([r[1] for r in rows]))
    empty = int((samples.sizes == 0).sum())
    if empty:
        log.info("%d empty stratum-replication cells excluded", empty)
    return samples


def _pairwise_cov(d: np.ndarray) -> np.ndarray:
    ok = ~np.isnan(d)
    if ok.all():
        return np.cov(d, rowvar=False, ddof=1)
    k = d.shape[1]
    cov = np.empty((k, k))
    for a in range(k):
        for b in range(a, k):
            both = ok[:, a] & ok[:, b]
            x, y = d[both, a], d[both, b]
            cov[a, b] = cov[b, a] = np.dot(x - x.mean(), y - y.mean()) / (both.sum() - 1)
    return cov


def estimate_cov(samples: ImbalanceSamples) -> CovEstimate:
    """Sample covariance, pooled variance, class correlations and top eigenvalue.

    The pooled variance averages the per-stratum variances with equal
    weights. Class correlations average the estimated correlation over all
    ordered pairs of distinct strata that agree on exactly the factors of
    each subset.
    """
    d = samples.normalized
    if d.shape[0] < 2:
        raise ValueError("need at least two samples")
    cov = _pairwise_cov(d)
    var = np.diag(cov)
    sigma2 = float(var.mean())
    # spread of the per-replication pooled second moment
    centered = d - np.nanmean(d, axis=0)
    per_rep = np.nanmean(centered ** 2, axis=1)
    se = float(per_rep.std(ddof=1) / np.sqrt(len(per_rep)))

    corr = cov / np.sqrt(np.outer(var, var))
    masks = agreement_masks(samples.spec.levels)
    full = (1 << samples.spec.num_factors) - 1
    classes = {int(m): float(corr[masks == m].mean())
               for m in np.unique(masks) if m != full}
    return CovEstimate(cov, sigma2, se, classes, max_eigenvalue(cov), d.shape[0])


def mev_product(spec: FactorSpec, sigma2_hat: float) -> float:
    """Top eigenvalue of the covariance implied by a pooled variance, equal prevalence."""
    if not spec.equal_prevalence:
        raise ValueError("closed-form eigenvalue only holds under equal stratum prevalence")
    return float(sigma2_hat * lambda_max(spec.levels))


def estimate_sigma2(spec: FactorSpec, cfg: ProcedureConfig | None = None, per_stratum: int = 500,
                    replications: int = 1000, master_seed: int = 0, threads: int = 1) -> CovEstimate:
    """Covariance estimate at ``N = per_stratum * M_s`` (the usual simulation size)."""
    cfg = cfg or ProcedureConfig()
    samples = collect_imbalances(spec, cfg, per_stratum * spec.n_strata, replications,
                                 master_seed, threads)
    return estimate_cov(samples)
