"""
Pivoted Cholesky factorization for positive semidefinite Gram matrices.
"""

from typing import Tuple

import numpy as np

from .models import GramMatrixError

RANK_TOL = 1e-10


def pivoted_cholesky(matrix: np.ndarray, tol: float = RANK_TOL) -> Tuple[np.ndarray, int]:
    """Factor a PSD matrix as B @ B.T with B of shape (k, rank).

    Symmetric pivoting on the largest remaining diagonal entry; the
    factorization stops once every remaining pivot is at most `tol`, which
    is how rank is detected for near-degenerate configurations.
    """
    A = np.array(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise GramMatrixError(f"Expected a square matrix, got shape {A.shape}")

    k = A.shape[0]
    piv = np.arange(k)
    rank = k

    for i in range(k):
        d = np.diag(A)[i:]
        j = i + int(np.argmax(d))
        if d.min() < -tol:
            raise GramMatrixError(
                f"Cholesky breakdown: negative pivot {d.min():.3e} at step {i}"
            )
        if A[j, j] <= tol:
            rank = i
            break

        # Symmetric row/column permutation.
        if j != i:
            A[:, [i, j]] = A[:, [j, i]]
            A[[i, j], :] = A[[j, i], :]
            piv[[i, j]] = piv[[j, i]]

        A[i, i] = np.sqrt(A[i, i])
        A[i + 1:, i] /= A[i, i]
        A[i + 1:, i + 1:] -= np.outer(A[i + 1:, i], A[i + 1:, i])

    L = np.tril(A)[:, :rank]
    ipiv = np.empty(k, dtype=int)
    ipiv[piv] = np.arange(k)
    B = L[ipiv, :]

    residual = np.max(np.abs(B @ B.T - np.asarray(matrix, dtype=float))) if k else 0.0
    if residual > tol:
        raise GramMatrixError(f"Cholesky breakdown: reconstruction error {residual:.3e} exceeds {tol}")

    return B, rank
