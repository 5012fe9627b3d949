"""Equal-prevalence asymptotic correlation of normalized stratum imbalances.

Entries of a level-permutation-invariant correlation matrix depend only on
the set ``I`` of factors on which two strata agree; ``I`` is handled as a
bitmask (bit ``k`` for factor ``k + 1``). All arithmetic here is exact:
class values are :class:`fractions.Fraction` and the matrix is stored as an
integer numerator matrix over a common denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm, prod
from typing import Mapping, Sequence

import numpy as np

from .strata import FactorSpec, agreement_masks

MAX_FACTORS = 24


def _levels(spec) -> tuple[int, ...]:
    return tuple(spec.levels) if isinstance(spec, FactorSpec) else tuple(int(n) for n in spec)


def _members(mask: int, m: int) -> list[int]:
    return [k for k in range(m) if mask >> k & 1]


def subset_label(mask: int, m: int) -> str:
    """``'{1,3}'``-style label of a factor subset, 1-based."""
    return "{" + ",".join(str(k + 1) for k in _members(mask, m)) + "}"


@dataclass(frozen=True)
class CorrelationSpec:
    """Level-permutation-invariant correlation matrix over the strata.

    ``class_values[I]`` is the correlation of two strata agreeing exactly
    on the factors in bitmask ``I``; the full mask must map to 1.
    """

    levels: tuple[int, ...]
    class_values: Mapping[int, Fraction]

    @property
    def num_factors(self) -> int:
        return len(self.levels)

    @property
    def n_strata(self) -> int:
        return prod(self.levels)

    @property
    def full_mask(self) -> int:
        return (1 << self.num_factors) - 1

    @cached_property
    def denominator(self) -> int:
        """Common denominator ``Q`` of all entries."""
        return lcm(*(Fraction(v).denominator for v in self.class_values.values()))

    @cached_property
    def numerators(self) -> np.ndarray:
        """Integer matrix equal to ``denominator * matrix``."""
        q = self.denominator
        lookup = np.zeros(1 << self.num_factors, dtype=np.int64)
        for mask, v in self.class_values.items():
            lookup[mask] = int(Fraction(v) * q)
        return lookup[agreement_masks(self.levels)]

    @property
    def matrix(self) -> np.ndarray:
        """Exact matrix as an object array of Fractions."""
        q = self.denominator
        return np.vectorize(lambda x: Fraction(int(x), q), otypes=[object])(self.numerators)

    def to_numpy(self) -> np.ndarray:
        return self.numerators / self.denominator

    def value(self, mask: int) -> Fraction:
        return Fraction(self.class_values[mask])


def equal_prevalence_class_value(levels: Sequence[int], mask: int) -> Fraction:
    m = len(levels)
    if mask == (1 << m) - 1:
        return Fraction(1)
    q = prod(levels) - sum(levels) + m - 1
    return Fraction(m - 1 - sum(levels[k] for k in _members(mask, m)), q)


def build_cor_matrix(spec) -> CorrelationSpec:
    """Asymptotic correlation matrix of Pocock-Simon imbalances, equal prevalence.

    For strata agreeing exactly on the factor set ``I`` (not all factors),
    ``c_I = (M - 1 - sum_{i in I} n_i) / (prod n_i - sum n_i + M - 1)``.
    """
    if isinstance(spec, FactorSpec) and not spec.equal_prevalence:
        raise ValueError("closed-form correlation requires equal stratum prevalence")
    levels = _levels(spec)
    m = len(levels)
    if m < 2:
        raise ValueError("minimization with a single factor is stratified randomization; need M >= 2")
    if m > MAX_FACTORS:
        raise ValueError(f"refusing 2^{m} subset enumeration (limit {MAX_FACTORS} factors)")
    values = {mask: equal_prevalence_class_value(levels, mask) for mask in range(1 << m)}
    return CorrelationSpec(levels, values)


def two_factor_solution(levels: Sequence[int]) -> CorrelationSpec:
    """Unique solution of the constraint system for two factors."""
    n1, n2 = levels
    values = {0b00: Fraction(1, (n1 - 1) * (n2 - 1)),
              0b01: Fraction(-1, n2 - 1),
              0b10: Fraction(-1, n1 - 1),
              0b11: Fraction(1)}
    return CorrelationSpec(tuple(levels), values)


def identity_cor(levels: Sequence[int]) -> CorrelationSpec:
    m = len(levels)
    values = {mask: Fraction(int(mask == (1 << m) - 1)) for mask in range(1 << m)}
    return CorrelationSpec(tuple(levels), values)


def constraint_residuals(cor: CorrelationSpec) -> list[Fraction]:
    """Residuals of the 2M margin-sum constraints, exact.

    For factor ``j``, the first M entries are
    ``sum_{I ni j} c_I prod_{i notin I} (n_i - 1)`` and the last M are
    ``sum_{I not ni j} c_I prod_{i notin I, i != j} (n_i - 1)``. Both vanish
    when the normalized imbalances of every factor level sum to zero.
    """
    levels, m = cor.levels, cor.num_factors
    full = cor.full_mask
    q = [n - 1 for n in levels]
    inside, outside = [], []
    for j in range(m):
        r_in = r_out = Fraction(0)
        for mask in range(1 << m):
            comp = _members(full & ~mask, m)
            c = cor.value(mask)
            if mask >> j & 1:
                r_in += c * prod(q[i] for i in comp)
            else:
                r_out += c * prod(q[i] for i in comp if i != j)
        inside.append(r_in)
        outside.append(r_out)
    return inside + outside


def max_abs_residual(cor: CorrelationSpec) -> Fraction:
    return max(abs(r) for r in constraint_residuals(cor))


def lambda_max(levels: Sequence[int]) -> Fraction:
    """Largest eigenvalue of the equal-prevalence correlation matrix."""
    levels = _levels(levels)
    return Fraction(prod(levels), prod(levels) - sum(levels) + len(levels) - 1)


def eigenvalue(cor: CorrelationSpec, j_mask: int) -> Fraction:
    """Eigenvalue attached to the factor subset ``J`` of a permutation-invariant matrix.

    ``lambda_J = sum_I (-1)^{#(J^c & I^c)} c_I prod_{j in J & I^c} (n_j - 1)``.
    """
    m, full = cor.num_factors, cor.full_mask
    jc = full & ~j_mask
    total = Fraction(0)
    for mask in range(1 << m):
        ic = full & ~mask
        sign = -1 if bin(jc & ic).count("1") % 2 else 1
        weight = prod(cor.levels[k] - 1 for k in _members(j_mask & ic, m))
        total += sign * weight * cor.value(mask)
    return total


def multiplicity(levels: Sequence[int], j_mask: int) -> int:
    m = len(levels)
    return prod(levels[k] - 1 for k in range(m) if not j_mask >> k & 1)


class SpectrumReport:
    """Eigenvalues, multiplicities and eigenbasis indexed by factor subsets."""

    def __init__(self, cor: CorrelationSpec):
        m = cor.num_factors
        if m > MAX_FACTORS:
            raise ValueError(f"refusing 2^{m} subset enumeration (limit {MAX_FACTORS} factors)")
        self.cor = cor
        self.eigenvalues = {j: eigenvalue(cor, j) for j in range(1 << m)}
        self.multiplicities = {j: multiplicity(cor.levels, j) for j in range(1 << m)}
        self.lambda_max = lambda_max(cor.levels)
        self.lemma_agrees = all(
            lam == (self.lambda_max if bin(j).count("1") < m - 1 else 0)
            for j, lam in self.eigenvalues.items())

    @property
    def max_eigenvalue(self) -> Fraction:
        return max(self.eigenvalues.values())

    @cached_property
    def eigenbasis(self) -> list[tuple[Fraction, np.ndarray]]:
        return eigenbasis(self.cor)


def spectrum(cor: CorrelationSpec) -> SpectrumReport:
    return SpectrumReport(cor)


def _factor_vectors(n: int, in_j: bool) -> list[np.ndarray]:
    if in_j:
        return [np.ones(n, dtype=np.int64)]
    out = []
    for k in range(n - 1):
        v = np.zeros(n, dtype=np.int64)
        v[k], v[k + 1] = 1, -1
        out.append(v)
    return out


def eigenbasis(cor: CorrelationSpec) -> list[tuple[Fraction, np.ndarray]]:
    """Tensor-product eigenvectors, grouped by subset ``J``.

    Factor ``j`` contributes the all-ones vector when ``j`` is in ``J`` and
    the adjacent differences ``e_k - e_{k+1}`` otherwise. Returns one
    ``(lambda_J, vectors)`` pair per ``J`` with ``vectors`` of shape
    ``(m_J, M_s)`` in integer entries.
    """
    m = cor.num_factors
    out = []
    for j in range(1 << m):
        per_factor = [_factor_vectors(n, bool(j >> k & 1)) for k, n in enumerate(cor.levels)]
        vecs = []
        for combo in product(*per_factor):
            v = np.ones(1, dtype=np.int64)
            for piece in combo:
                v = np.kron(v, piece)
            vecs.append(v)
        out.append((eigenvalue(cor, j), np.array(vecs)))
    return out


def eigen_residual_is_zero(cor: CorrelationSpec, lam: Fraction, vectors: np.ndarray) -> bool:
    """Exact check of ``C v = lambda v`` for each row of ``vectors``."""
    lhs = vectors @ cor.numerators.T * lam.denominator
    rhs = vectors * (lam.numerator * cor.denominator)
    return bool(np.array_equal(lhs, rhs))


def verify_eigenbasis(cor: CorrelationSpec) -> bool:
    basis = eigenbasis(cor)
    if sum(v.shape[0] for _, v in basis) != cor.n_strata:
        return False
    if not all(eigen_residual_is_zero(cor, lam, v) for lam, v in basis):
        return False
    stacked = np.vstack([v for _, v in basis]).astype(float)
    return bool(np.linalg.matrix_rank(stacked) == cor.n_strata)
