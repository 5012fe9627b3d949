"""Factor-level lattice, stratum coding and covariate sampling.

Strata are coded in mixed radix with factor 1 as the most significant
digit, so for levels ``(2, 3)`` the linear order is
``(1,1), (1,2), (1,3), (2,1), (2,2), (2,3)``. Levels are 1-based in the
public API and 0-based in arrays.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

PROB_TOL = 1e-12


def _as_prob_vector(p) -> np.ndarray:
    return np.array([float(Fraction(x)) if isinstance(x, str) else float(x) for x in p])


@dataclass(frozen=True)
class FactorSpec:
    """Prognostic factors and their prevalence model.

    ``prevalence`` is either ``None`` (every level equally likely), a
    sequence of per-factor level probability vectors (``independent``
    model) or, with ``joint=True``, one probability per stratum.
    """

    levels: tuple[int, ...]
    prevalence: tuple | None = None
    joint: bool = False
    _w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        levels = tuple(int(n) for n in self.levels)
        if len(levels) < 1:
            raise ValueError("at least one factor is required")
        if any(n < 2 for n in levels):
            raise ValueError(f"every factor needs >= 2 levels, got {levels}")
        object.__setattr__(self, "levels", levels)
        n_strata = int(np.prod(levels))
        if self.prevalence is None:
            if self.joint:
                raise ValueError("joint model requires stratum probabilities")
            w = np.full(n_strata, 1.0 / n_strata)
        elif self.joint:
            w = _as_prob_vector(self.prevalence)
            if w.size != n_strata:
                raise ValueError(f"joint distribution has {w.size} entries, expected {n_strata}")
            _check_probs(w)
        else:
            probs = tuple(tuple(_as_prob_vector(p)) for p in self.prevalence)
            if len(probs) != len(levels):
                raise ValueError("need one probability vector per factor")
            for n, p in zip(levels, probs):
                if len(p) != n:
                    raise ValueError(f"factor with {n} levels got {len(p)} probabilities")
                _check_probs(np.asarray(p))
            object.__setattr__(self, "prevalence", probs)
            w = np.ones(1)
            for p in probs:
                w = np.kron(w, np.asarray(p))
        w.setflags(write=False)
        object.__setattr__(self, "_w", w)

    @property
    def num_factors(self) -> int:
        return len(self.levels)

    @property
    def n_strata(self) -> int:
        return int(np.prod(self.levels))

    @property
    def stratum_prevalence(self) -> np.ndarray:
        """Population probability w_z of every stratum, in linear order."""
        return self._w

    @property
    def equal_prevalence(self) -> bool:
        return bool(np.allclose(self._w, 1.0 / self.n_strata, rtol=0, atol=PROB_TOL))

    def level_probabilities(self, factor: int) -> np.ndarray:
        """Marginal level distribution of 1-based ``factor``."""
        _check_factor(self, factor)
        w = self._w.reshape(self.levels)
        axes = tuple(k for k in range(self.num_factors) if k != factor - 1)
        return w.sum(axis=axes)


def _check_probs(p: np.ndarray) -> None:
    if np.any(p < 0):
        raise ValueError("probabilities must be non-negative")
    if abs(p.sum() - 1.0) > PROB_TOL:
        raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")


def _check_factor(spec: FactorSpec, factor: int) -> None:
    if not 1 <= factor <= spec.num_factors:
        raise ValueError(f"factor {factor} out of range 1..{spec.num_factors}")


@dataclass(frozen=True)
class StratumIndex:
    multi_index: tuple[int, ...]
    linear: int


@dataclass(frozen=True)
class SubjectCovariates:
    stratum: StratumIndex

    @property
    def raw_levels(self) -> tuple[int, ...]:
        return self.stratum.multi_index


def encode(levels: Sequence[int], multi_index: Sequence[int]) -> int:
    """Mixed-radix code of a 1-based level tuple."""
    if len(multi_index) != len(levels):
        raise ValueError("multi-index length does not match number of factors")
    code = 0
    for n, i in zip(levels, multi_index):
        if not 1 <= i <= n:
            raise ValueError(f"level {i} out of range 1..{n}")
        code = code * n + (i - 1)
    return code


def decode(levels: Sequence[int], linear: int) -> tuple[int, ...]:
    out = []
    for n in reversed(levels):
        linear, r = divmod(linear, n)
        out.append(r + 1)
    if linear:
        raise ValueError("linear index out of range")
    return tuple(reversed(out))


def level_matrix(levels: Sequence[int]) -> np.ndarray:
    """``(M_s, M)`` array of 0-based levels for every stratum in linear order."""
    grids = np.meshgrid(*[np.arange(n) for n in levels], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def enumerate_strata(spec: FactorSpec) -> list[StratumIndex]:
    return [StratumIndex(tuple(int(x) + 1 for x in row), z)
            for z, row in enumerate(level_matrix(spec.levels))]


def marginal_members(spec: FactorSpec, factor: int, level: int) -> set[StratumIndex]:
    """Strata whose ``factor`` sits at ``level`` (both 1-based)."""
    _check_factor(spec, factor)
    if not 1 <= level <= spec.levels[factor - 1]:
        raise ValueError(f"level {level} out of range for factor {factor}")
    return {s for s in enumerate_strata(spec) if s.multi_index[factor - 1] == level}


def agreement_masks(levels: Sequence[int]) -> np.ndarray:
    """Bitmask of factors on which each pair of strata agrees.

    Bit ``k`` (value ``1 << k``) is set when the two strata share the level
    of factor ``k + 1``.
    """
    lv = level_matrix(levels)
    mask = np.zeros((lv.shape[0], lv.shape[0]), dtype=np.int64)
    for k in range(lv.shape[1]):
        mask |= (lv[:, None, k] == lv[None, :, k]).astype(np.int64) << k
    return mask


def sample_strata(spec: FactorSpec, size: int, rng: np.random.Generator) -> np.ndarray:
    """Linear stratum codes of ``size`` independent subjects."""
    if spec.joint:
        cdf = np.cumsum(spec.stratum_prevalence)
        u = rng.random(size)
        return np.minimum(np.searchsorted(cdf, u, side="right"), spec.n_strata - 1)
    codes = np.zeros(size, dtype=np.int64)
    for k, n in enumerate(spec.levels):
        if spec.prevalence is None:
            lvl = rng.integers(0, n, size=size)
        else:
            cdf = np.cumsum(spec.prevalence[k])
            lvl = np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), n - 1)
        codes = codes * n + lvl
    return codes


def sample_covariates(spec: FactorSpec, rng: np.random.Generator) -> SubjectCovariates:
    z = int(sample_strata(spec, 1, rng)[0])
    return SubjectCovariates(StratumIndex(decode(spec.levels, z), z))
