"""Cyclic Jacobi eigenvalue iteration for symmetric matrices."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n)
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(off) <= tol:
            return a, v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k, p], a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p, k], a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k, p], v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return a, v, -1


def jacobi_eigh(a, tol: float = 1e-10, max_sweeps: int = 100):
    """Eigenvalues (ascending) and eigenvectors of a symmetric matrix.

    Iterates cyclic sweeps until the Frobenius norm of the off-diagonal
    part falls below ``tol`` times the matrix norm.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    scale = max(np.linalg.norm(a), 1e-300)
    d, v, sweeps = _jacobi(a, tol * scale, max_sweeps)
    if sweeps < 0:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(d).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def max_eigenvalue(a, tol: float = 1e-10) -> float:
    return float(jacobi_eigh(a, tol)[0][-1])
