"""Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices."""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceFailure


def off_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt((off * off).sum()))


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of symmetric ``A``, sorted descending.

    Sweeps the upper triangle in row order, annihilating each off-diagonal
    entry with a plane rotation, until the off-diagonal Frobenius norm drops
    below ``tol``.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T):
        raise ValueError("matrix must be symmetric")
    for _ in range(max_sweeps):
        if off_norm(A) < tol:
            return np.sort(np.diag(A))[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp = A[:, p].copy()
                cq = A[:, q]
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp = A[p, :].copy()
                rq = A[q, :]
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
    if off_norm(A) < tol:
        return np.sort(np.diag(A))[::-1]
    raise ConvergenceFailure(f"off-diagonal norm {off_norm(A):.3e} after {max_sweeps} sweeps")
