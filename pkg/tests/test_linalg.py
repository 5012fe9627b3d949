import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covadapt.linalg import jacobi_eigh, max_eigenvalue
from covadapt.theory import build_cor_matrix, lambda_max


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 24), st.integers(0, 2 ** 32))
def test_matches_eigvalsh(n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    a = a + a.T
    vals, vecs = jacobi_eigh(a)
    np.testing.assert_allclose(vals, np.linalg.eigvalsh(a), atol=1e-8)
    np.testing.assert_allclose(a @ vecs, vecs * vals, atol=1e-7)
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(n), atol=1e-9)


@pytest.mark.parametrize("levels", [(2, 2), (2, 2, 2, 2), (3, 4), (2, 2, 3)])
def test_top_eigenvalue_of_correlation(levels):
    top = max_eigenvalue(build_cor_matrix(levels).to_numpy())
    assert top == pytest.approx(float(lambda_max(levels)), abs=1e-9)


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_input_untouched():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    before = a.copy()
    vals, _ = jacobi_eigh(a)
    assert np.array_equal(a, before)
    np.testing.assert_allclose(vals, [1.0, 3.0])
