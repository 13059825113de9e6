"""
Verified linear algebra on interval matrices.
"""

import logging

import numpy as np

from core.exceptions import DivisionByZeroInterval, SingularEnclosure
from ivl import rounding
from ivl.interval import Interval

logger = logging.getLogger(__name__)


def _midpoint_inverse(A):
    try:
        C = np.linalg.inv(A.mid())
    except np.linalg.LinAlgError as exc:
        raise SingularEnclosure(f"midpoint matrix is singular: {exc}") from exc
    if not np.all(np.isfinite(C)):
        raise SingularEnclosure("midpoint inverse is not finite")
    return C


def _check_diagonal_dominance(M):
    n = M.shape[0]
    magnitude = M.mag()
    off_diagonal = np.where(np.eye(n, dtype=bool), 0.0, magnitude)
    bound = rounding.sum_up(off_diagonal, axis=1)
    diagonal = np.diagonal(M.mig())
    if not np.all(diagonal > bound):
        raise SingularEnclosure(
            "preconditioned matrix is not strictly diagonally dominant "
            f"(diag={diagonal.tolist()}, off={bound.tolist()})"
        )


def linear_solve_enclosure(A, b):
    """Enclose {B^-1 c : B in A, c in b}.

    b may be a vector (n,) or a matrix (n, m) of right-hand sides.
    """
    A = Interval.coerce(A)
    b = Interval.coerce(b)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SingularEnclosure(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    vector = b.ndim == 1
    if vector:
        b = b.reshape(n, 1)

    C = _midpoint_inverse(A)
    M = C @ A
    rhs = C @ b
    _check_diagonal_dominance(M)

    rows = [Interval.concatenate([M[i], rhs[i]]) for i in range(n)]
    try:
        for k in range(n):
            pivot = rows[k][k]
            for i in range(k + 1, n):
                factor = rows[i][k] / pivot
                rows[i] = rows[i] - factor * rows[k]
        solution = [None] * n
        for i in reversed(range(n)):
            acc = rows[i][n:]
            for j in range(i + 1, n):
                acc = acc - rows[i][j] * solution[j]
            solution[i] = acc / rows[i][i]
    except DivisionByZeroInterval as exc:
        raise SingularEnclosure(f"interval Gauss pivot contains zero: {exc}") from exc

    x = Interval.stack(solution)
    return x.reshape(n) if vector else x


def verified_inverse(A):
    """Interval matrix containing the inverse of every member of A."""
    A = Interval.coerce(A)
    return linear_solve_enclosure(A, Interval.identity(A.shape[0]))


def orthonormal_frame(M):
    """Float orthonormal basis from the QR factorization of M."""
    Q, R = np.linalg.qr(np.asarray(M, dtype=np.float64))
    signs = np.where(np.diagonal(R) < 0, -1.0, 1.0)
    return Q * signs
