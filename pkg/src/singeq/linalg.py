"""Exact dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Everything
here is plain Gaussian elimination; fixture sizes make speed a non-issue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch


def reduce_mod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref(A: np.ndarray, p: int):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = reduce_mod(A, p).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = None
        for i in range(r, rows):
            if R[i, c] % p:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = (R[r] * inv_mod(R[r, c], p)) % p
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def kernel_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Columns span Null(A); shape (cols, nullity)."""
    A = reduce_mod(A, p)
    rows, cols = A.shape
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    K = zeros(cols, len(free))
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, fc]) % p
    return K


def solve(A: np.ndarray, b: np.ndarray, p: int):
    """One solution of A x = b, or None if inconsistent."""
    A = reduce_mod(A, p)
    b = reduce_mod(b, p).reshape(-1)
    if b.shape[0] != A.shape[0]:
        raise DimensionMismatch(
            f"matrix has {A.shape[0]} rows but vector has {b.shape[0]} entries"
        )
    aug = np.hstack([A, b.reshape(-1, 1)])
    R, pivots = rref(aug, p)
    if A.shape[1] in pivots:
        return None
    x = zeros(A.shape[1], 1).reshape(-1)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, -1]
    return x


def solve_matrix(A: np.ndarray, B: np.ndarray, p: int):
    """One X with A X = B, or None.  B may have several columns."""
    A = reduce_mod(A, p)
    B = reduce_mod(B, p)
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatch("row counts differ")
    cols = []
    for j in range(B.shape[1]):
        x = solve(A, B[:, j], p)
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return zeros(A.shape[1], 0)
    return np.column_stack(cols) % p


def column_space_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Pivot columns of A; shape (rows, rank)."""
    A = reduce_mod(A, p)
    _, pivots = rref(A, p)
    return A[:, pivots].copy()


def extend_to_basis(B: np.ndarray, p: int) -> np.ndarray:
    """Complete the independent columns of B to a basis of F_p^rows."""
    rows = B.shape[0]
    cur = B.copy()
    r = rank(cur, p)
    for i in range(rows):
        if r == rows:
            break
        e = zeros(rows, 1)
        e[i, 0] = 1
        cand = np.hstack([cur, e])
        if rank(cand, p) > r:
            cur = cand
            r += 1
    return cur


def invert(A: np.ndarray, p: int):
    """Inverse of a square matrix, or None if singular."""
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatch("matrix not square")
    if n == 0:
        return zeros(0, 0)
    aug = np.hstack([reduce_mod(A, p), eye(n)])
    R, pivots = rref(aug, p)
    if pivots[: n] != list(range(n)) or len(pivots) < n:
        return None
    return R[:, n:].copy()


@dataclass
class LinearSolution:
    """Outcome of solve_and_kernel: particular solution, kernel, rank."""

    particular: np.ndarray | None
    kernel: np.ndarray
    rank: int


def solve_and_kernel(A: np.ndarray, b: np.ndarray | None, p: int) -> LinearSolution:
    """Particular solution of A x = b (if b given), kernel basis and rank."""
    A = reduce_mod(A, p)
    part = None
    if b is not None:
        part = solve(A, b, p)
    return LinearSolution(particular=part, kernel=kernel_basis(A, p), rank=rank(A, p))
