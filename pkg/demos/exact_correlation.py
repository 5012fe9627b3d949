"""Exact correlation structure of minimization imbalances.

Builds the equal-prevalence correlation matrix for a few factor layouts,
prints its class values as fractions and checks the spectrum.
"""
from covadapt.strata import enumerate_strata, FactorSpec
from covadapt.theory import build_cor_matrix, spectrum, subset_label, verify_eigenbasis

for levels in [(2, 2), (3, 3), (2, 2, 2, 2)]:
    cor = build_cor_matrix(levels)
    m = len(levels)
    print(f"levels {levels}: {cor.n_strata} strata, denominator Q = {cor.denominator}")
    for mask in range(1 << m):
        print(f"  agree on {subset_label(mask, m):12s} -> {cor.value(mask)}")
    rep = spectrum(cor)
    print(f"  lambda_max = {rep.lambda_max} = {float(rep.lambda_max):.5f}")
    print(f"  eigenbasis verified exactly: {verify_eigenbasis(cor)}\n")

# the 2 x 2 matrix in full, rows labelled by stratum
cor = build_cor_matrix((2, 2))
for s, row in zip(enumerate_strata(FactorSpec((2, 2))), cor.matrix):
    print(s.multi_index, [str(x) for x in row])
