"""Dense linear algebra over a field given by a :class:`~hermself.gf.GF`.

Matrices are numpy int64 arrays of element codes.  The same routines work
over the subfield F_q because the subfield codes are closed under the
field's tables.
"""
from __future__ import annotations

import numpy as np

from .gf import GF


def asmatrix(A, cols: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, cols or 0), dtype=np.int64)
    return A


def matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out_shape = A.shape[:-1] + B.shape[1:]
    acc = np.zeros(out_shape, dtype=np.int64)
    for t in range(A.shape[-1]):
        a = A[..., t]
        b = B[t]
        acc = F.add(acc, F.mul(a.reshape(a.shape + (1,) * b.ndim), b))
    return acc


def rref(F: GF, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (0-based).

    Zero rows are kept at the bottom so the shape is unchanged.
    """
    R = np.array(asmatrix(A), dtype=np.int64, copy=True)
    m, n = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = F.mul(R[row], F.inv(R[row, col]))
        others = np.flatnonzero(R[:, col])
        others = others[others != row]
        if others.size:
            R[others] = F.sub(R[others], F.mul(R[others, col][:, None], R[row][None, :]))
        pivots.append(col)
        row += 1
    return R, pivots


def rank(F: GF, A) -> int:
    return len(rref(F, A)[1])


def row_basis(F: GF, A) -> np.ndarray:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    R, piv = rref(F, A)
    return R[: len(piv)]


def right_kernel(F: GF, A, cols: int | None = None) -> np.ndarray:
    """Basis of {x : A x = 0}, one vector per row, in canonical echelon form."""
    A = asmatrix(A, cols)
    n = A.shape[1]
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for r, f in enumerate(free):
        K[r, f] = 1
        for i, pc in enumerate(piv):
            K[r, pc] = F.neg(R[i, f])
    if len(K):
        K = row_basis(F, K)
    return K


def left_kernel(F: GF, A) -> np.ndarray:
    """Basis of {v : v A = 0}."""
    return right_kernel(F, asmatrix(A).T)


def in_span(F: GF, rows, v) -> bool:
    rows = asmatrix(rows, len(v))
    v = np.asarray(v, dtype=np.int64)
    if not np.any(v):
        return True
    if rows.shape[0] == 0:
        return False
    return rank(F, np.vstack([rows, v])) == rank(F, rows)


def same_span(F: GF, A, B) -> bool:
    """Row spaces of A and B coincide."""
    A, B = asmatrix(A), asmatrix(B)
    rA, rB = rank(F, A), rank(F, B)
    if rA != rB:
        return False
    if rA == 0:
        return True
    return rank(F, np.vstack([A, B])) == rA


def is_subfield_matrix(F: GF, A) -> bool:
    return bool(np.all(np.asarray(A) < F.q))
