"""Exact linear algebra: echelon forms, kernels, polynomial determinants, minors.

Scalar routines are generic over any field object.  A dense mod-p path backed
by numpy is used internally where matrices get large (degree pieces of ideals,
interpolation); polynomial data stays sparse everywhere else.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import ShapeError
from .poly import Poly, PolyMatrix

__all__ = [
    "echelon",
    "rank",
    "kernel",
    "max_minors",
    "det_laplace",
    "det_bareiss",
    "echelon_modp",
    "rank_modp",
    "nullspace_modp",
]


def echelon(rows, field):
    """Reduced row echelon form. Returns (nonzero rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not field.is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix, field):
    return len(echelon(matrix, field)[0])


def kernel(matrix, field, ncols=None):
    """Reduced-echelon basis of the right null space of a scalar matrix.

    An empty matrix (no rows) yields the full space.
    """
    if matrix:
        ncols = len(matrix[0])
    elif ncols is None:
        raise ShapeError("need ncols for an empty matrix")
    rref, pivots = echelon(matrix, field)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(rref[i][fc])
        basis.append(v)
    if not basis:
        return []
    return echelon(basis, field)[0]


# ---------------------------------------------------------------------------
# polynomial determinants

def det_laplace(entries):
    """Determinant of a square matrix of Poly via column-subset dynamic programming."""
    n = len(entries)
    if n == 0 or any(len(row) != n for row in entries):
        raise ShapeError("square matrix required")
    field, nvars = entries[0][0].field, entries[0][0].nvars
    one = Poly.constant(field, nvars, 1)
    dp = {(): one}
    for k in range(1, n + 1):
        row = entries[k - 1]
        ndp = {}
        for cols in combinations(range(n), k):
            acc = Poly.zero(field, nvars)
            sign = 1 if (k - 1) % 2 == 0 else -1
            for idx, j in enumerate(cols):
                prev = dp[cols[:idx] + cols[idx + 1 :]]
                if row[j].is_zero() or prev.is_zero():
                    sign = -sign
                    continue
                term = row[j] * prev
                acc = acc + term if sign > 0 else acc - term
                sign = -sign
            ndp[cols] = acc
        dp = ndp
    return dp[tuple(range(n))]


def det_bareiss(entries):
    """Determinant via fraction-free (Bareiss) elimination with exact polynomial division."""
    n = len(entries)
    if n == 0 or any(len(row) != n for row in entries):
        raise ShapeError("square matrix required")
    field, nvars = entries[0][0].field, entries[0][0].nvars
    a = [list(row) for row in entries]
    sign = 1
    prev = Poly.constant(field, nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(field, nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divexact(prev) if not num.is_zero() else num
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def max_minors(M):
    """Signed maximal minors of a (n+1) x n matrix: F_i = (-1)^i det(M without row i)."""
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M)
    if M.rows != M.cols + 1:
        raise ShapeError(f"need shape (n+1) x n, got {M.rows} x {M.cols}")
    out = []
    for i in range(M.rows):
        rows = [M.entries[r] for r in range(M.rows) if r != i]
        if M.cols == 0:
            raise ShapeError("degenerate 1 x 0 matrix")
        d = det_laplace(rows)
        out.append(d if i % 2 == 0 else -d)
    return out


# ---------------------------------------------------------------------------
# dense mod-p routines (numpy) for large scalar problems over prime fields

def echelon_modp(A, p):
    """Reduced row echelon of an int64 array mod p. Returns (rref, pivot cols)."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2:
        raise ShapeError("2-D array required")
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        touch = np.nonzero(col)[0]
        if touch.size:
            A[touch] = (A[touch] - np.outer(col[touch], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_modp(A, p):
    return len(echelon_modp(A, p)[1])


def nullspace_modp(A, p):
    """Basis (rows of the returned array) of the right null space mod p."""
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape if A.ndim == 2 else (0, 0)
    rref, pivots = echelon_modp(A, p) if nrows else (np.zeros((0, ncols), dtype=np.int64), [])
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(rref[i, fc])) % p
    return basis
