"""Jacobson radical, splitness, and primitive idempotents.

The radical is computed with the characteristic-p trace-form iteration:
starting from ``I = A`` one repeatedly keeps the elements ``x`` with
``g_i(x y) = 0`` for all ``y``, where ``g_i(a)`` is the trace of the
``p^i``-th power of an integer lift of the left-regular matrix of ``a``,
taken mod ``p^(i+1)`` and divided by ``p^i``.  After
``i = floor(log_p dim A)`` the surviving ideal is the radical.
"""

from __future__ import annotations

import weakref

import numpy as np

from . import exactlin as el
from .algebra import FinDimAlgebra, corner_algebra, quotient_algebra

__all__ = [
    "NonSplitError",
    "radical_algebra",
    "radical_power",
    "semisimple_quotient",
    "is_split",
    "check_split",
    "is_local",
    "lift_primitive_idempotents",
    "minimal_polynomial",
]


class NonSplitError(ValueError):
    """The semisimple quotient has a simple factor that is not a matrix algebra over GF(p)."""


_RAD_CACHE: "weakref.WeakKeyDictionary[FinDimAlgebra, np.ndarray]" = weakref.WeakKeyDictionary()


def _matpow_mod(ms: np.ndarray, e: int, mod: int) -> np.ndarray:
    out = np.broadcast_to(np.eye(ms.shape[-1], dtype=np.int64), ms.shape).copy()
    base = ms % mod
    while e:
        if e & 1:
            out = np.matmul(out, base) % mod
        e >>= 1
        if e:
            base = np.matmul(base, base) % mod
    return out


def radical_algebra(a: FinDimAlgebra) -> np.ndarray:
    """Column basis of the Jacobson radical of ``a``."""
    if a in _RAD_CACHE:
        return _RAD_CACHE[a]
    p, n = a.p, a.dim
    basis = el.identity(n)  # rows: current ideal
    i = 0
    while p**i <= n and basis.shape[0]:
        q, mod = p**i, p ** (i + 1)
        r = basis.shape[0]
        # left-regular matrices of x_k b_j, lifted to [0, p)
        prods = np.mod(np.einsum("ka,ajc->kjc", basis, a.constants), p)  # (r, n, n): x_k b_j
        mats = np.einsum("kjc,cst->kjst", prods, a.left_regular).reshape(r * n, n, n) % p
        powered = _matpow_mod(mats, q, mod)
        traces = np.trace(powered, axis1=1, axis2=2) % mod
        if np.any(traces % q):
            raise ArithmeticError("trace not divisible by p^i; radical iteration invariant broken")
        g = (traces // q).reshape(r, n) % p
        coeffs = el.kernel_basis(g.T, p)  # c with sum_k c_k g[k, j] = 0
        basis = el.row_space(np.mod(coeffs @ basis, p), p) if coeffs.shape[0] else np.zeros((0, n), dtype=np.int64)
        i += 1
    rad = basis.T.copy() if basis.shape[0] else np.zeros((n, 0), dtype=np.int64)
    _RAD_CACHE[a] = rad
    return rad


def radical_power(a: FinDimAlgebra, k: int) -> np.ndarray:
    """Column basis of ``rad(a)^k`` (``k = 0`` gives the whole algebra)."""
    p = a.p
    cur = el.identity(a.dim)
    rad = radical_algebra(a)
    for _ in range(k):
        if cur.shape[1] == 0 or rad.shape[1] == 0:
            return np.zeros((a.dim, 0), dtype=np.int64)
        blocks = [a.left_matrix(rad[:, t]) @ cur for t in range(rad.shape[1])]
        cur = el.column_space(np.mod(np.hstack(blocks), p), p)
    return cur


def semisimple_quotient(a: FinDimAlgebra):
    """``(a/rad, projection, section)``; see :func:`quotient_algebra`."""
    return quotient_algebra(a, radical_algebra(a), name=f"{a.name}/rad")


def _center(b: FinDimAlgebra) -> np.ndarray:
    n, p = b.dim, b.p
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows = [np.mod(b.right_regular[g] - b.left_regular[g], p) for g in b.generators] or [np.zeros((0, n), dtype=np.int64)]
    return el.kernel_basis(np.vstack(rows), p).T


def is_split(a: FinDimAlgebra) -> bool:
    """Every simple factor of ``a/rad`` is a full matrix algebra over GF(p).

    The center of a semisimple algebra is a product of finite fields; it is
    a power of GF(p) exactly when Frobenius fixes every central element, and
    central simple algebras over finite fields are matrix algebras.
    """
    b, _, _ = semisimple_quotient(a)
    z = _center(b)
    for t in range(z.shape[1]):
        x = z[:, t]
        if not np.array_equal(b.power(x, b.p), x):
            return False
    return True


def check_split(a: FinDimAlgebra) -> None:
    if not is_split(a):
        raise NonSplitError(f"{a.name or 'algebra'}: semisimple quotient is not split over GF({a.p})")


def _top_is_division(a: FinDimAlgebra) -> bool:
    """``a / rad(a)`` is a division algebra, i.e. a finite field."""
    if a.dim == 0:
        return False
    if a.dim - radical_algebra(a).shape[1] == 1:
        return True
    b, _, _ = semisimple_quotient(a)
    if not b.is_commutative():
        return False
    # the Frobenius-fixed subalgebra has one dimension per simple factor
    frob = np.array([b.power(b.basis_vector(j), b.p) for j in range(b.dim)], dtype=np.int64).T
    return b.dim - el.rank(np.mod(frob - el.identity(b.dim), b.p), b.p) == 1


def is_local(a: FinDimAlgebra) -> bool:
    """``a / rad(a)`` is one-dimensional.

    A quotient that is a proper field extension of GF(p) is reported via
    :class:`NonSplitError` rather than answered.
    """
    if a.dim == 0:
        return False
    if a.dim - radical_algebra(a).shape[1] == 1:
        return True
    if _top_is_division(a):
        raise NonSplitError(f"{a.name or 'algebra'}: local with a non-split residue field")
    return False


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists from low to high degree


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _pdivmod(f, g, p):
    f = list(f)
    q = [0] * max(len(f) - len(g) + 1, 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        k = len(f) - len(g)
        q[k] = c
        for i, y in enumerate(g):
            f[i + k] = (f[i + k] - c * y) % p
        f = _trim(f)
    return _trim(q), f


def _pgcdex(f, g, p):
    """``(d, s, t)`` with ``s f + t g = d`` monic."""
    r0, r1, s0, s1, t0, t1 = f, g, [1], [], [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda h: _trim([c * inv % p for c in h])  # noqa: E731
    return scale(r0), scale(s0), scale(t0)


def minimal_polynomial(a: FinDimAlgebra, x, unit=None) -> list[int]:
    """Monic minimal polynomial of ``x`` relative to the unit ``unit`` (default ``1``)."""
    p = a.p
    unit = a.unit if unit is None else unit
    powers = [np.mod(unit, p)]
    while True:
        nxt = a.mul(powers[-1], x)
        basis = np.array(powers).T
        c = el.solve(basis, nxt, p)
        if c is not None:
            return [int(-v) % p for v in c] + [1]
        powers.append(nxt)


def _evaluate(a: FinDimAlgebra, f, x, unit) -> np.ndarray:
    acc = np.zeros(a.dim, dtype=np.int64)
    for c in reversed(f):
        acc = np.mod(a.mul(acc, x) + c * unit, a.p)
    return acc


def _pmod(f, g, p):
    return _pdivmod(f, g, p)[1]


def _ppowmod(f, e: int, m, p):
    out, base = [1], _pmod(f, m, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return out


def _gcd(f, g, p):
    return _pgcdex(f, g, p)[0] if (f or g) else []


def _coprime_part(f, u, p):
    """Largest divisor of ``f`` whose prime factors all divide ``u``."""
    q, r = [1], f
    while True:
        c = _gcd(r, u, p)
        if len(c) == 1:
            return q
        q, r = _pmul(q, c, p), _pdivmod(r, c, p)[0]


def _coprime_split(f, p, rng):
    """``(g, h)`` with ``g h = f`` coprime and both nonconstant, or ``None`` for a prime power."""
    deg = len(f) - 1
    x = [0, 1]
    xp = x
    for d in range(1, deg + 1):
        xp = _ppowmod(xp, p, f, p)
        diff = _psub(xp, x, p)
        gd = _gcd(f, diff, p) if diff else f
        if len(gd) == 1:
            continue
        if len(gd) - 1 == d:
            u = gd
        else:
            u = None
            for _ in range(200):
                a = _trim([int(c) for c in rng.integers(0, p, len(gd) - 1)])
                if len(a) < 2:
                    continue
                if p == 2:
                    t, acc = a, a
                    for _ in range(d - 1):
                        t = _pmod(_pmul(t, t, p), gd, p)
                        acc = _psub(acc, [(-c) % p for c in t], p)
                    cand = acc
                else:
                    cand = _psub(_ppowmod(a, (p**d - 1) // 2, gd, p), [1], p)
                w = _gcd(gd, cand, p) if cand else gd
                if 1 < len(w) < len(gd):
                    u = w
                    break
            if u is None:
                return None
        g = _coprime_part(f, u, p)
        if len(g) < len(f):
            return g, _pdivmod(f, g, p)[0]
        if u is gd:
            return None
    return None


def _splitting_idempotent(a: FinDimAlgebra, x, e, rng) -> np.ndarray | None:
    """A nontrivial idempotent of ``k[x]`` (unit ``e``) when the minimal polynomial has coprime factors."""
    p = a.p
    f = minimal_polynomial(a, x, e)
    split = _coprime_split(f, p, rng)
    if split is None:
        return None
    g, h = split
    d, s, t = _pgcdex(g, h, p)
    assert d == [1]
    return _evaluate(a, _pmul(s, g, p), x, e)


def _split_semisimple(b: FinDimAlgebra, seed: int) -> list[np.ndarray]:
    """Complete set of primitive orthogonal idempotents of a semisimple algebra."""
    p = b.p
    rng = np.random.default_rng(seed)
    done: list[np.ndarray] = []
    stack = [b.unit.copy()]
    while stack:
        e = stack.pop()
        corner_alg = corner_algebra(b, e)
        if _top_is_division(corner_alg):
            done.append(e)
            continue
        corner = corner_alg.embedding
        k = corner.shape[1]
        u = None
        candidates = [corner[:, t] for t in range(k)]
        candidates += [np.mod(corner[:, s] + corner[:, t], p) for s in range(k) for t in range(s + 1, k)]
        for attempt in range(len(candidates) + 400):
            x = candidates[attempt] if attempt < len(candidates) else np.mod(corner @ rng.integers(0, p, k), p)
            u = _splitting_idempotent(b, x, e, rng)
            if u is not None:
                break
        if u is None:
            raise ArithmeticError("failed to split a non-primitive idempotent")
        # keep the discovery order stable: the first factor is processed first
        stack.append(np.mod(e - u, p))
        stack.append(u)
    return done


def lift_primitive_idempotents(a: FinDimAlgebra, seed: int = 0) -> np.ndarray:
    """Complete set of primitive orthogonal idempotents (rows), lifted from ``a/rad``.

    Raises :class:`NonSplitError` when the semisimple quotient is not split.
    """
    check_split(a)
    p = a.p
    b, proj, section = semisimple_quotient(a)
    if b.dim == 0:
        return np.zeros((0, a.dim), dtype=np.int64)
    bar = _split_semisimple(b, seed)
    lifted = []
    f = a.unit.copy()
    for ebar in bar[:-1]:
        y = np.mod(section @ ebar, p)
        y = a.mul(a.mul(f, y), f)
        while not np.array_equal(a.mul(y, y), y):
            y2 = a.mul(y, y)
            y = np.mod(3 * y2 - 2 * a.mul(y2, y), p)
        lifted.append(y)
        f = np.mod(f - y, p)
    lifted.append(f)
    return np.array(lifted, dtype=np.int64)
