"""Sequential two-arm treatment allocation.

Pocock-Simon minimization plus the stratified reference procedures
(permuted block, Efron biased coin, Wei urn, big stick and complete
randomization). Every assignment consumes exactly one uniform ``u`` from
the caller's generator; the preferred arm is taken iff ``u < p`` and a
50:50 decision gives arm 1 iff ``u < 0.5``.

The decision logic lives in one numba-compiled step function shared by
the per-subject API (:func:`assign`) and the batch loop
(:func:`allocate`), so both paths produce identical traces.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .strata import FactorSpec, SubjectCovariates, level_matrix, sample_strata

KINDS = ("pocock_simon", "stratified_permuted_block", "efron_biased_coin",
         "wei_urn", "big_stick", "complete")
_KIND_CODE = {k: i for i, k in enumerate(KINDS)}
PS, BLOCK, EFRON, URN, BIG_STICK, COMPLETE = range(6)


@dataclass(frozen=True)
class ProcedureConfig:
    kind: str = "pocock_simon"
    bias_p: float = 0.9
    imbalance_measure: str = "squared"
    block_size: int = 4
    mti: int = 3
    urn_alpha: int = 1
    urn_beta: int = 1

    def __post_init__(self):
        if self.kind not in _KIND_CODE:
            raise ValueError(f"unknown procedure {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("pocock_simon", "efron_biased_coin") and not 0.5 < self.bias_p <= 1:
            raise ValueError(f"bias must lie in (1/2, 1], got {self.bias_p}")
        if self.imbalance_measure not in ("squared", "absolute"):
            raise ValueError(f"unknown imbalance measure {self.imbalance_measure!r}")
        if self.kind == "stratified_permuted_block" and (
                self.block_size < 2 or self.block_size % 2):
            raise ValueError("block size must be an even integer >= 2")
        if self.kind == "big_stick" and self.mti < 1:
            raise ValueError("maximum tolerated imbalance must be >= 1")
        if self.kind == "wei_urn" and (self.urn_alpha < 0 or self.urn_beta < 0
                                       or self.urn_alpha + self.urn_beta == 0):
            raise ValueError("urn parameters must be non-negative and not both zero")

    @property
    def code(self) -> int:
        return _KIND_CODE[self.kind]


class AllocationState:
    """Per-stratum arm counts and marginal imbalances, updated online.

    ``counts[z]`` holds ``(arm 1, arm 0)`` counts; ``margins`` stores
    D(j;h) for every factor level, factor-major. ``block_left`` tracks the
    unused arm-1/arm-0 slots of each stratum's current permuted block.
    """

    def __init__(self, spec: FactorSpec):
        self.spec = spec
        self.stratum_levels = level_matrix(spec.levels).astype(np.int64)
        self.level_offset = np.concatenate(([0], np.cumsum(spec.levels)[:-1])).astype(np.int64)
        self.counts = np.zeros((spec.n_strata, 2), dtype=np.int64)
        self.margins = np.zeros(int(sum(spec.levels)), dtype=np.int64)
        self.block_left = np.zeros((spec.n_strata, 2), dtype=np.int64)

    @property
    def total_assigned(self) -> int:
        return int(self.counts.sum())

    @property
    def stratum_imbalance(self) -> np.ndarray:
        """D_m(z), arm 1 minus arm 0, in linear stratum order."""
        return self.counts[:, 0] - self.counts[:, 1]

    def marginal_imbalance(self, factor: int, level: int) -> int:
        return int(self.margins[self.level_offset[factor - 1] + level - 1])

    def overall_imbalance(self) -> int:
        return int(np.sum(self.margins ** 2))

    def check(self) -> None:
        """Raise if the margins are not the sums of the stratum imbalances."""
        d = self.stratum_imbalance
        expected = np.zeros_like(self.margins)
        for k in range(self.spec.num_factors):
            np.add.at(expected, self.level_offset[k] + self.stratum_levels[:, k], d)
        if not np.array_equal(expected, self.margins):
            raise RuntimeError("allocation state corrupted: margins disagree with strata")


@njit(cache=True)
def _step(kind, p, absolute, block_size, mti, alpha, beta,
          stratum_levels, level_offset, counts, margins, block_left, z, u):
    n_factors = stratum_levels.shape[1]
    if kind == PS:
        diff = 0  # Imb(arm 1) - Imb(arm 0)
        for k in range(n_factors):
            d = margins[level_offset[k] + stratum_levels[z, k]]
            if absolute:
                diff += abs(d + 1) - abs(d - 1)
            else:
                diff += 4 * d
        if diff == 0:
            arm = 1 if u < 0.5 else 0
        else:
            preferred = 1 if diff < 0 else 0
            arm = preferred if u < p else 1 - preferred
    else:
        dz = counts[z, 0] - counts[z, 1]
        if kind == BLOCK:
            if block_left[z, 0] + block_left[z, 1] == 0:
                block_left[z, 0] = block_size // 2
                block_left[z, 1] = block_size // 2
            r1 = block_left[z, 0]
            arm = 1 if u < r1 / (r1 + block_left[z, 1]) else 0
            block_left[z, 1 - arm] -= 1
        elif kind == EFRON:
            if dz == 0:
                arm = 1 if u < 0.5 else 0
            else:
                preferred = 1 if dz < 0 else 0
                arm = preferred if u < p else 1 - preferred
        elif kind == URN:
            num = alpha + beta * counts[z, 1]
            den = 2 * alpha + beta * (counts[z, 0] + counts[z, 1])
            arm = 1 if u < num / den else 0
        elif kind == BIG_STICK:
            if dz >= mti:
                arm = 0
            elif dz <= -mti:
                arm = 1
            else:
                arm = 1 if u < 0.5 else 0
        else:
            arm = 1 if u < 0.5 else 0
    counts[z, 1 - arm] += 1
    sign = 1 if arm == 1 else -1
    for k in range(n_factors):
        margins[level_offset[k] + stratum_levels[z, k]] += sign
    return arm


@njit(cache=True, nogil=True)
def _run(kind, p, absolute, block_size, mti, alpha, beta,
         stratum_levels, level_offset, counts, margins, block_left, strata, u):
    arms = np.empty(strata.shape[0], dtype=np.int8)
    for i in range(strata.shape[0]):
        arms[i] = _step(kind, p, absolute, block_size, mti, alpha, beta,
                        stratum_levels, level_offset, counts, margins, block_left,
                        strata[i], u[i])
    return arms


def _params(cfg: ProcedureConfig):
    return (cfg.code, float(cfg.bias_p), cfg.imbalance_measure == "absolute",
            int(cfg.block_size), int(cfg.mti), int(cfg.urn_alpha), int(cfg.urn_beta))


def assign(state: AllocationState, subj: SubjectCovariates, cfg: ProcedureConfig,
           rng: np.random.Generator) -> int:
    """Assign one subject and update ``state``; returns the arm (0 or 1)."""
    u = rng.random()
    return int(_step(*_params(cfg), state.stratum_levels, state.level_offset, state.counts,
                     state.margins, state.block_left, subj.stratum.linear, u))


def pocock_simon_assign(state, subj, cfg, rng) -> int:
    if cfg.kind != "pocock_simon":
        raise ValueError(f"procedure kind is {cfg.kind!r}, not pocock_simon")
    state.check()
    return assign(state, subj, cfg, rng)


def reference_assign(state, subj, cfg, rng) -> int:
    if cfg.kind == "pocock_simon":
        raise ValueError("reference_assign does not handle pocock_simon")
    return assign(state, subj, cfg, rng)


def prob_arm1(state: AllocationState, subj: SubjectCovariates, cfg: ProcedureConfig) -> float:
    """Exact probability that the next assignment is arm 1 (state untouched)."""

    def arm_at(u):
        counts, margins, left = state.counts.copy(), state.margins.copy(), state.block_left.copy()
        return _step(*_params(cfg), state.stratum_levels, state.level_offset, counts, margins,
                     left, subj.stratum.linear, u)

    # the arm is constant on [0, t) and on [t, 1); locate t by bisection
    first = arm_at(0.0)
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if arm_at(mid) == first:
            lo = mid
        else:
            hi = mid
    t = round(hi, 12)
    return t if first == 1 else 1.0 - t


class Allocation(NamedTuple):
    arms: np.ndarray
    state: AllocationState
    strata: np.ndarray


def allocate(spec: FactorSpec, cfg: ProcedureConfig, strata: np.ndarray,
             rng: np.random.Generator) -> Allocation:
    """Assign subjects with the given stratum codes, in order."""
    strata = np.ascontiguousarray(strata, dtype=np.int64)
    state = AllocationState(spec)
    u = rng.random(strata.shape[0])
    arms = _run(*_params(cfg), state.stratum_levels, state.level_offset, state.counts,
                state.margins, state.block_left, strata, u)
    return Allocation(arms, state, strata)


def run_allocation(spec: FactorSpec, cfg: ProcedureConfig, n: int,
                   rng: np.random.Generator) -> Allocation:
    """Sample ``n`` subjects' covariates, then allocate them sequentially."""
    if n < 1:
        raise ValueError("need at least one subject")
    strata = sample_strata(spec, n, rng)
    return allocate(spec, cfg, strata, rng)


def imbalance_trace(spec: FactorSpec, strata: np.ndarray, arms: np.ndarray) -> np.ndarray:
    """Overall squared marginal imbalance after each assignment."""
    lv = level_matrix(spec.levels)[strata]
    offset = np.concatenate(([0], np.cumsum(spec.levels)[:-1]))
    sign = np.where(np.asarray(arms) == 1, 1, -1)
    imb = np.zeros(len(sign), dtype=np.int64)
    for k in range(spec.num_factors):
        margins = np.zeros((len(sign), spec.levels[k]), dtype=np.int64)
        margins[np.arange(len(sign)), lv[:, k]] = sign
        imb += np.sum(np.cumsum(margins, axis=0) ** 2, axis=1)
    return imb


def write_trace(path, spec: FactorSpec, alloc: Allocation) -> None:
    imb = imbalance_trace(spec, alloc.strata, alloc.arms)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["subject_index", "stratum_linear", "arm", "imb_after"])
        for i, (z, a, v) in enumerate(zip(alloc.strata, alloc.arms, imb)):
            w.writerow([i, int(z), int(a), int(v)])
