"""Dense linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` int64 arrays whose entries are kept reduced
into ``[0, p)``; the modulus travels alongside as an explicit argument.
All fixture algebras are small (dimension well below 100), so a
straightforward vectorised Gauss-Jordan elimination is all we need.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "is_prime",
    "check_prime",
    "as_matrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
    "matmul",
    "row_space",
    "column_space",
    "in_column_space",
    "coordinates",
    "left_inverse",
    "complement_columns",
    "intersect_columns",
    "same_column_space",
    "identity",
]


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"modulus must be a prime, got {p!r}")
    return int(p)


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a reduced 2-D int64 array.

    ``cols`` fixes the column count of an empty input (an empty list
    otherwise has no shape to recover).
    """
    a = np.asarray(m, dtype=np.int64)
    if a.size == 0:
        rows = a.shape[0] if a.ndim >= 1 else 0
        ncols = cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.zeros((rows, ncols), dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    return np.mod(a, p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(*ms: np.ndarray, p: int) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = np.mod(out @ m, p)
    return np.mod(out, p)


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...], int]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Returns ``(R, pivot_columns, rank)``.
    """
    a = as_matrix(m, p).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))] - np.outer(col[hit], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots), r


def rank(m, p: int) -> int:
    return rref(m, p)[2]


def kernel_basis(m, p: int) -> np.ndarray:
    """Basis of ``{x : m x = 0}``, one vector per row.

    The result always has ``cols - rank`` rows, even when that is zero.
    """
    a = as_matrix(m, p)
    cols = a.shape[1]
    r, pivots, rk = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = (-r[i, f]) % p
    return out


def solve(m, b, p: int) -> np.ndarray | None:
    """One solution of ``m x = b``, or ``None`` when ``b`` is not in the column space.

    ``b`` may be a vector or a matrix of right-hand sides (one per column);
    free variables are set to zero.
    """
    a = as_matrix(m, p)
    bb = np.asarray(b, dtype=np.int64)
    vector = bb.ndim == 1
    if vector:
        bb = bb.reshape(-1, 1)
    if bb.shape[0] != a.shape[0]:
        raise ValueError(f"right-hand side has {bb.shape[0]} rows, matrix has {a.shape[0]}")
    rows, cols = a.shape
    k = bb.shape[1]
    r, pivots, rk = rref(np.hstack([a, np.mod(bb, p)]), p)
    if any(pc >= cols for pc in pivots):
        return None
    x = np.zeros((cols, k), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vector else x


def inverse(m, p: int) -> np.ndarray:
    a = as_matrix(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("only square matrices are invertible")
    r, pivots, rk = rref(np.hstack([a, identity(n)]), p)
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:].copy()


def row_space(m, p: int) -> np.ndarray:
    """Echelon basis of the row space (rows)."""
    r, _, rk = rref(m, p)
    return r[:rk]


def column_space(m, p: int) -> np.ndarray:
    """Basis of the column space, as the columns of the returned matrix.

    The basis is the echelon basis of the transposed row space, so two
    matrices with equal column spaces return identical bases.
    """
    a = as_matrix(m, p)
    return row_space(a.T, p).T.copy() if a.shape[1] else np.zeros((a.shape[0], 0), dtype=np.int64)


def in_column_space(basis: np.ndarray, v, p: int) -> bool:
    return solve(basis, v, p) is not None if basis.shape[1] else not np.any(np.mod(v, p))


def coordinates(basis: np.ndarray, vs, p: int) -> np.ndarray:
    """Coordinates of the column(s) ``vs`` in the column basis ``basis``; raises if outside."""
    x = solve(basis, vs, p)
    if x is None:
        raise ValueError("vector not in the span of the basis")
    return x


def left_inverse(basis: np.ndarray, p: int) -> np.ndarray:
    """Some ``L`` with ``L @ basis = I`` for a full-column-rank ``basis``."""
    n, k = basis.shape
    if k == 0:
        return np.zeros((0, n), dtype=np.int64)
    r, pivots, rk = rref(basis.T, p)
    if rk < k:
        raise ValueError("basis columns are dependent")
    # rows of basis at the pivot columns of basis^T form an invertible block
    sel = list(pivots)
    block = basis[sel, :]
    inv = inverse(block, p)
    out = np.zeros((k, n), dtype=np.int64)
    out[:, sel] = inv
    return out


def complement_columns(basis: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of ``basis`` to ``GF(p)^n``."""
    if basis.shape[1] == 0:
        return identity(n)
    _, pivots, _ = rref(basis.T, p)
    free = [i for i in range(n) if i not in set(pivots)]
    return identity(n)[:, free]


def intersect_columns(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Column basis of ``span(u) ∩ span(w)``."""
    n = u.shape[0]
    if u.shape[1] == 0 or w.shape[1] == 0:
        return np.zeros((n, 0), dtype=np.int64)
    k = kernel_basis(np.hstack([u, -w]), p)
    if k.shape[0] == 0:
        return np.zeros((n, 0), dtype=np.int64)
    vecs = np.mod(u @ k[:, : u.shape[1]].T, p)
    return column_space(vecs, p)


def same_column_space(u: np.ndarray, w: np.ndarray, p: int) -> bool:
    ru, rw = rank(u, p), rank(w, p)
    return ru == rw and rank(np.hstack([u, w]), p) == ru
