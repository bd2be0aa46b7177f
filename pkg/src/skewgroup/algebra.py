"""Finite-dimensional algebras given by structure constants, and the
objects built on top of them: quiver presentations, finite groups acting
by automorphisms, skew group algebras and fixed subalgebras.

Conventions
-----------
* An algebra of dimension ``n`` stores ``constants[i, j]``, the coordinate
  vector of ``b_i * b_j``.
* Elements are coordinate vectors (1-D int arrays reduced mod ``p``).
* Linear maps are matrices acting on column vectors, so column ``j`` of
  an automorphism matrix holds the image of ``b_j``.
* Paths are multiplied in composition order: ``u * v`` is "first ``v``,
  then ``u``" and is nonzero only when ``v`` ends where ``u`` starts.  With
  this convention ``A e_i`` is spanned by the paths starting at ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import exactlin as el

__all__ = [
    "FinDimAlgebra",
    "QuiverPresentation",
    "QuiverAlgebra",
    "FiniteGroup",
    "GroupAction",
    "SkewGroupAlgebra",
    "FixedAlgebra",
    "SplittingData",
    "IdempotentAction",
    "algebra_from_quiver",
    "algebra_from_table",
    "matrix_algebra",
    "product_algebra",
    "verify_algebra",
    "subalgebra",
    "corner_algebra",
    "quotient_algebra",
    "quiver_automorphism",
    "skew_group_algebra",
    "fixed_algebra",
    "verify_sylow",
    "find_sylow",
    "verify_complete_idempotent_set",
    "check_action_on_idempotents",
    "bimodule_splitting",
    "splitting_violations",
]


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    """Associative unital algebra over GF(p), stored by structure constants.

    ``parent``/``embedding`` are set for subalgebras: the columns of
    ``embedding`` are the basis vectors written in parent coordinates.
    """

    p: int
    constants: np.ndarray
    unit: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = ""
    parent: FinDimAlgebra | None = field(default=None, repr=False)
    embedding: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        el.check_prime(self.p)
        c = np.mod(np.asarray(self.constants, dtype=np.int64), self.p)
        n = c.shape[0] if c.ndim == 3 else 0
        if c.size == 0:
            c = np.zeros((n, n, n), dtype=np.int64)
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        u = np.mod(np.asarray(self.unit, dtype=np.int64).reshape(-1), self.p)
        if u.shape != (n,):
            raise ValueError("unit has the wrong length")
        object.__setattr__(self, "constants", c)
        object.__setattr__(self, "unit", u)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(n)))
        elif len(self.labels) != n:
            raise ValueError("one label per basis element expected")
        if self.embedding is not None:
            object.__setattr__(self, "embedding", np.mod(np.asarray(self.embedding, dtype=np.int64), self.p))

    def __repr__(self) -> str:
        return f"FinDimAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def mul(self, x, y) -> np.ndarray:
        return np.mod(np.einsum("i,j,ijk->k", x, y, self.constants), self.p)

    def power(self, x, k: int) -> np.ndarray:
        out = self.unit.copy()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    @cached_property
    def left_regular(self) -> np.ndarray:
        """``left_regular[i]`` is the matrix of ``y -> b_i y``."""
        return np.ascontiguousarray(np.transpose(self.constants, (0, 2, 1)))

    @cached_property
    def right_regular(self) -> np.ndarray:
        """``right_regular[j]`` is the matrix of ``y -> y b_j``."""
        return np.ascontiguousarray(np.transpose(self.constants, (1, 2, 0)))

    def left_matrix(self, x) -> np.ndarray:
        return np.mod(np.tensordot(x, self.left_regular, axes=1), self.p)

    def right_matrix(self, x) -> np.ndarray:
        return np.mod(np.tensordot(x, self.right_regular, axes=1), self.p)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices that generate the algebra (greedy, in basis order)."""
        p, n = self.p, self.dim
        chosen: list[int] = []
        span = self.unit.reshape(-1, 1) if n else np.zeros((0, 0), dtype=np.int64)
        span = el.column_space(span, p)
        for i in range(n):
            if span.shape[1] == n:
                break
            if el.in_column_space(span, self.basis_vector(i), p):
                continue
            chosen.append(i)
            span = self._closure(span, chosen)
        return tuple(chosen)

    def _closure(self, span: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        while True:
            blocks = [span] + [np.mod(self.left_regular[g] @ span, self.p) for g in gens]
            new = el.column_space(np.hstack(blocks), self.p)
            if new.shape[1] == span.shape[1]:
                return new
            span = new

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.constants, np.transpose(self.constants, (1, 0, 2))))

    def parent_coordinates(self, x) -> np.ndarray:
        """Image of ``x`` in the parent algebra."""
        if self.embedding is None:
            raise ValueError("not a subalgebra")
        return np.mod(self.embedding @ x, self.p)


def algebra_from_table(p: int, constants, unit, labels: Sequence[str] = (), name: str = "") -> FinDimAlgebra:
    return FinDimAlgebra(p, np.asarray(constants, dtype=np.int64), np.asarray(unit), tuple(labels), name)


def matrix_algebra(n: int, p: int) -> FinDimAlgebra:
    """The full matrix algebra M_n(GF(p)) on matrix units ``E_ij``."""
    d = n * n
    c = np.zeros((d, d, d), dtype=np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        c[i * n + j, j * n + l, i * n + l] = 1
    unit = np.zeros(d, dtype=np.int64)
    for i in range(n):
        unit[i * n + i] = 1
    labels = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return FinDimAlgebra(p, c, unit, labels, f"M{n}(GF({p}))")


def product_algebra(*algebras: FinDimAlgebra, name: str = "") -> FinDimAlgebra:
    p = algebras[0].p
    dims = [a.dim for a in algebras]
    n = sum(dims)
    c = np.zeros((n, n, n), dtype=np.int64)
    unit = np.zeros(n, dtype=np.int64)
    labels: list[str] = []
    off = 0
    for k, a in enumerate(algebras):
        if a.p != p:
            raise ValueError("factors live over different fields")
        s = slice(off, off + a.dim)
        c[s, s, s] = a.constants
        unit[s] = a.unit
        labels.extend(f"{lab}^{k + 1}" for lab in a.labels)
        off += a.dim
    return FinDimAlgebra(p, c, unit, tuple(labels), name or " x ".join(a.name or "?" for a in algebras))


def verify_algebra(a: FinDimAlgebra) -> list[tuple]:
    """Exhaustive associativity and unit check.

    Returns the violated triples ``(i, j, l)`` (associativity) and pairs
    ``("unit", i)``; an empty list means the table is a unital algebra.
    """
    p, c = a.p, a.constants
    bad: list[tuple] = []
    # (b_i b_j) b_l  versus  b_i (b_j b_l)
    left = np.mod(np.einsum("ijm,mlk->ijlk", c, c), p)
    right = np.mod(np.einsum("jlm,imk->ijlk", c, c), p)
    for idx in zip(*np.nonzero(np.any(left != right, axis=3))):
        bad.append(tuple(int(t) for t in idx))
    u = a.unit
    ul = np.mod(np.einsum("i,ijk->jk", u, c), p)
    ur = np.mod(np.einsum("j,ijk->ik", u, c), p)
    eye = el.identity(a.dim)
    for i in range(a.dim):
        if not (np.array_equal(ul[i], eye[i]) and np.array_equal(ur[i], eye[i])):
            bad.append(("unit", i))
    return bad


def subalgebra(a: FinDimAlgebra, basis: np.ndarray, name: str = "", cls=None, unit=None, **extra) -> FinDimAlgebra:
    """Subalgebra spanned by the columns of ``basis`` (closed, containing ``unit``, default 1)."""
    p = a.p
    basis = np.mod(np.asarray(basis, dtype=np.int64), p)
    k = basis.shape[1]
    prods = np.mod(np.einsum("ia,jb,ijk->kab", basis, basis, a.constants), p).reshape(a.dim, k * k)
    coords = el.solve(basis, prods, p) if k else np.zeros((0, 0), dtype=np.int64)
    if coords is None:
        raise ValueError("subspace is not closed under multiplication")
    one = a.unit if unit is None else np.mod(np.asarray(unit, dtype=np.int64), p)
    unit = el.solve(basis, one, p) if k else np.zeros(0, dtype=np.int64)
    if unit is None:
        raise ValueError("subspace does not contain the unit")
    constants = np.transpose(coords.reshape(k, k, k), (1, 2, 0))
    labels = tuple(_element_label(a, basis[:, t]) for t in range(k))
    cls = cls or FinDimAlgebra
    return cls(p, constants, unit, labels, name, parent=a, embedding=basis, **extra)


def _element_label(a: FinDimAlgebra, x) -> str:
    terms = []
    for i in np.flatnonzero(x):
        c = int(x[i])
        terms.append(a.labels[i] if c == 1 else f"{c}{a.labels[i]}")
    return "+".join(terms) or "0"


def corner_algebra(a: FinDimAlgebra, e) -> FinDimAlgebra:
    """The algebra ``e a e`` with unit ``e``."""
    m = el.matmul(a.left_matrix(e), a.right_matrix(e), p=a.p)
    return subalgebra(a, el.column_space(m, a.p), name=f"e{a.name}e", unit=e)


def quotient_algebra(a: FinDimAlgebra, ideal: np.ndarray, name: str = ""):
    """``a / I`` for a two-sided ideal given by column basis ``ideal``.

    Returns ``(quotient, projection, section)`` where ``projection`` maps
    ``a``-coordinates to quotient coordinates and ``section`` lifts the
    quotient basis back to the standard complement in ``a``.
    """
    p, n = a.p, a.dim
    comp = el.complement_columns(ideal, n, p)
    full = np.hstack([comp, ideal]) if ideal.shape[1] else comp
    inv = el.inverse(full, p)
    k = comp.shape[1]
    proj = inv[:k]
    prods = np.mod(np.einsum("ia,jb,ijk->kab", comp, comp, a.constants), p).reshape(n, k * k)
    constants = np.transpose(np.mod(proj @ prods, p).reshape(k, k, k), (1, 2, 0))
    unit = np.mod(proj @ a.unit, p)
    labels = tuple(a.labels[int(np.flatnonzero(comp[:, t])[0])] for t in range(k))
    q = FinDimAlgebra(p, constants, unit, labels, name or f"{a.name}/I")
    return q, proj, comp


# ---------------------------------------------------------------------------
# Quivers


@dataclass(frozen=True)
class QuiverPresentation:
    """Finite quiver with relations.

    ``arrows`` are ``(label, source, target)``; each relation is a list of
    ``(coefficient, path)`` with paths given as arrow labels in traversal
    order.  Every path of length ``>= nilpotency_bound`` is declared zero.
    """

    vertices: tuple
    arrows: tuple[tuple[str, object, object], ...] = ()
    relations: tuple[tuple[tuple[int, tuple[str, ...]], ...], ...] = ()
    nilpotency_bound: int = 2

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(
            self,
            "relations",
            tuple(tuple((int(c), tuple(path)) for c, path in rel) for rel in self.relations),
        )
        if self.nilpotency_bound < 1:
            raise ValueError("nilpotency bound must be at least 1")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow label")
        for lab, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"arrow {lab} has an unknown endpoint")


# a path is (source index, target index, arrow indices in traversal order)
Path = tuple[int, int, tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class QuiverAlgebra(FinDimAlgebra):
    quiver: QuiverPresentation | None = field(default=None, repr=False)
    paths: tuple = field(default=(), repr=False)
    reduction: np.ndarray | None = field(default=None, repr=False)
    ideal: np.ndarray | None = field(default=None, repr=False)
    basis_paths: tuple[int, ...] = ()

    def vertex_idempotent(self, v) -> np.ndarray:
        i = self.quiver.vertices.index(v)
        return self.reduction[:, self.paths.index((i, i, ()))].copy()

    def vertex_idempotents(self) -> np.ndarray:
        """Rows ``e_v`` for the vertices, in vertex order."""
        return np.array([self.vertex_idempotent(v) for v in self.quiver.vertices], dtype=np.int64).reshape(
            len(self.quiver.vertices), self.dim
        )


def _enumerate_paths(q: QuiverPresentation, max_len: int) -> list[Path]:
    arrows = [(q.vertices.index(s), q.vertices.index(t)) for _, s, t in q.arrows]
    level = [(i, i, ()) for i in range(len(q.vertices))]
    out = list(level)
    for _ in range(max_len):
        nxt = []
        for s, t, arr in level:
            for k, (a_s, a_t) in enumerate(arrows):
                if a_s == t:
                    nxt.append((s, a_t, arr + (k,)))
        out.extend(nxt)
        level = nxt
    return out


def _path_product(u: Path, v: Path) -> Path | None:
    """``u * v``: traverse ``v`` then ``u``."""
    if v[1] != u[0]:
        return None
    return (v[0], u[1], v[2] + u[2])


def _relation_vectors(q: QuiverPresentation, index: dict, p: int, cutoff: int) -> list[np.ndarray]:
    labels = {a[0]: k for k, a in enumerate(q.arrows)}
    vecs = []
    for r, rel in enumerate(q.relations):
        ends = set()
        vec = np.zeros(len(index), dtype=np.int64)
        for coeff, path in rel:
            if not path:
                raise ValueError(f"relation {r}: empty path; use explicit vertex relations")
            try:
                arr = tuple(labels[x] for x in path)
            except KeyError as exc:
                raise ValueError(f"relation {r}: unknown arrow {exc.args[0]}") from None
            src = q.vertices.index(q.arrows[arr[0]][1])
            tgt = q.vertices.index(q.arrows[arr[-1]][2])
            for a1, a2 in zip(arr, arr[1:]):
                if q.arrows[a1][2] != q.arrows[a2][1]:
                    raise ValueError(f"relation {r}: {'.'.join(path)} is not a path")
            ends.add((src, tgt))
            if len(arr) < cutoff:
                vec[index[(src, tgt, arr)]] += coeff
        if len(ends) > 1:
            raise ValueError(f"relation {r} mixes non-parallel paths")
        vecs.append(np.mod(vec, p))
    return vecs


def _ideal_in_truncation(q, paths, p, cutoff) -> np.ndarray:
    """Row basis of the two-sided ideal generated by the relations inside kQ / (paths of length >= cutoff)."""
    index = {pt: k for k, pt in enumerate(paths)}
    rels = _relation_vectors(q, index, p, cutoff)
    rows = []
    for vec in rels:
        support = [paths[k] for k in np.flatnonzero(vec)]
        for u in paths:
            for v in paths:
                out = np.zeros(len(paths), dtype=np.int64)
                for k, w in zip(np.flatnonzero(vec), support):
                    uw = _path_product(u, w)
                    if uw is None:
                        continue
                    uwv = _path_product(uw, v)
                    if uwv is None or len(uwv[2]) >= cutoff:
                        continue
                    out[index[uwv]] += vec[k]
                if np.any(np.mod(out, p)):
                    rows.append(np.mod(out, p))
    if not rows:
        return np.zeros((0, len(paths)), dtype=np.int64)
    return el.row_space(np.array(rows), p)


def algebra_from_quiver(q: QuiverPresentation, p: int, name: str = "") -> QuiverAlgebra:
    """Path algebra of ``q`` modulo its relations and all paths of length ``>= N``.

    The ideal is computed degreewise; a relation mixing non-parallel paths
    raises ``ValueError``.
    """
    p = el.check_prime(p)
    n_bound = q.nilpotency_bound
    paths = _enumerate_paths(q, n_bound - 1)
    ideal = _ideal_in_truncation(q, paths, p, n_bound)

    # prefer long paths as pivots so the surviving basis consists of short paths
    order = sorted(range(len(paths)), key=lambda k: (-len(paths[k][2]), -k))
    pivots: set[int] = set()
    red_rows = np.zeros((0, len(paths)), dtype=np.int64)
    if ideal.shape[0]:
        r, piv, rk = el.rref(ideal[:, order], p)
        red_rows = np.zeros((rk, len(paths)), dtype=np.int64)
        red_rows[:, order] = r[:rk]
        pivots = {order[c] for c in piv}
    basis_idx = [k for k in range(len(paths)) if k not in pivots]
    pos = {k: t for t, k in enumerate(basis_idx)}
    reduction = np.zeros((len(basis_idx), len(paths)), dtype=np.int64)
    for k in basis_idx:
        reduction[pos[k], k] = 1
    for row in red_rows:
        pc = next(c for c in order if row[c])
        for k in basis_idx:
            if row[k]:
                reduction[pos[k], pc] = (-row[k]) % p

    nb = len(basis_idx)
    index = {pt: k for k, pt in enumerate(paths)}
    constants = np.zeros((nb, nb, nb), dtype=np.int64)
    for i, ki in enumerate(basis_idx):
        for j, kj in enumerate(basis_idx):
            w = _path_product(paths[ki], paths[kj])
            if w is not None and len(w[2]) < n_bound:
                constants[i, j] = reduction[:, index[w]]
    unit = np.zeros(nb, dtype=np.int64)
    for v in range(len(q.vertices)):
        unit = unit + reduction[:, index[(v, v, ())]]
    labels = tuple(_path_label(q, paths[k]) for k in basis_idx)
    return QuiverAlgebra(
        p,
        constants,
        np.mod(unit, p),
        labels,
        name or "kQ/I",
        quiver=q,
        paths=tuple(paths),
        reduction=reduction,
        ideal=ideal,
        basis_paths=tuple(basis_idx),
    )


def _path_label(q: QuiverPresentation, path: Path) -> str:
    if not path[2]:
        return f"e{q.vertices[path[0]]}"
    # composition order, rightmost arrow traversed first
    return "".join(str(q.arrows[k][0]) for k in reversed(path[2]))


def quiver_automorphism(
    qa: QuiverAlgebra,
    vertex_map: Mapping,
    arrow_map: Mapping[str, tuple[int, str]] | None = None,
) -> np.ndarray:
    """Matrix of the automorphism given on generators.

    ``vertex_map`` permutes vertices; ``arrow_map[a] = (scalar, b)`` sends
    arrow ``a`` to ``scalar * b``.  Unlisted arrows are fixed.  The map is
    extended multiplicatively and checked to preserve the relation ideal.
    """
    q, p = qa.quiver, qa.p
    vmap = {v: vertex_map.get(v, v) for v in q.vertices}
    if sorted(map(repr, vmap.values())) != sorted(map(repr, q.vertices)):
        raise ValueError("vertex map is not a permutation of the vertices")
    labels = {a[0]: k for k, a in enumerate(q.arrows)}
    amap: dict[int, tuple[int, int]] = {}
    for lab, (src, tgt) in ((a[0], (a[1], a[2])) for a in q.arrows):
        scalar, image = (arrow_map or {}).get(lab, (1, lab))
        if image not in labels:
            raise ValueError(f"arrow {lab} mapped to unknown arrow {image}")
        if int(scalar) % p == 0:
            raise ValueError(f"arrow {lab} mapped to a zero multiple of {image}")
        _, isrc, itgt = q.arrows[labels[image]]
        if (isrc, itgt) != (vmap[src], vmap[tgt]):
            raise ValueError(f"image of arrow {lab} does not connect the images of its endpoints")
        amap[labels[lab]] = (int(scalar) % p, labels[image])
    unknown = set((arrow_map or {})) - set(labels)
    if unknown:
        raise ValueError(f"arrow map names unknown arrows {sorted(unknown)}")

    vidx = {i: q.vertices.index(vmap[v]) for i, v in enumerate(q.vertices)}
    paths = qa.paths
    index = {pt: k for k, pt in enumerate(paths)}
    phi = np.zeros((len(paths), len(paths)), dtype=np.int64)
    for k, (s, t, arr) in enumerate(paths):
        coeff = 1
        image = []
        for a in arr:
            c, b = amap[a]
            coeff = coeff * c % p
            image.append(b)
        phi[index[(vidx[s], vidx[t], tuple(image))], k] = coeff
    red = qa.reduction
    if qa.ideal.shape[0]:
        if np.any(np.mod(red @ phi @ qa.ideal.T, p)):
            raise ValueError("automorphism does not preserve the relations")
    m = np.mod(red @ phi[:, list(qa.basis_paths)], p)
    if el.rank(m, p) != qa.dim:
        raise ValueError("generator images do not define an automorphism")
    return m


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group given by its multiplication table ``table[g, h] = gh``."""

    table: np.ndarray
    labels: tuple[str, ...] = ()
    identity: int = 0

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise ValueError("multiplication table must be a non-empty square array")
        if t.min() < 0 or t.max() >= n:
            raise ValueError("table entries must be element indices")
        object.__setattr__(self, "table", t)
        ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
        if not ids:
            raise ValueError("table has no identity element")
        object.__setattr__(self, "identity", ids[0])
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(n)))

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return cls(table, tuple("1" if i == 0 else ("s" if i == 1 else f"s^{i}") for i in range(n)))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        return int(np.flatnonzero(self.table[g] == self.identity)[0])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def verify(self) -> list[str]:
        n, t = self.order, self.table
        bad = []
        for g in range(n):
            if sorted(t[g]) != list(range(n)) or sorted(t[:, g]) != list(range(n)):
                bad.append(f"row/column {g} is not a permutation")
        assoc = t[t, :]  # (gh)k as assoc[g, h, k]
        other = t[:, t]  # g(hk) as other[g, h, k]
        if not np.array_equal(assoc, other):
            bad.append("multiplication is not associative")
        return bad

    def is_subgroup(self, sub: Iterable[int]) -> bool:
        s = set(int(x) for x in sub)
        if self.identity not in s or not s <= set(range(self.order)):
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        s = {self.identity}
        frontier = list(s)
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in s:
                        s.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(s))

    def ordered_subgroup(self, sub: Iterable[int]) -> tuple[int, ...]:
        """Subgroup elements with the identity first, then ascending."""
        s = sorted(set(int(x) for x in sub))
        if not self.is_subgroup(s):
            raise ValueError(f"{s} is not a subgroup")
        return (self.identity,) + tuple(x for x in s if x != self.identity)

    def left_cosets(self, sub: Iterable[int]) -> tuple[int, ...]:
        """Representatives of ``G/H``: the identity first, then lowest index first."""
        sub = self.ordered_subgroup(sub)
        reps = [self.identity]
        covered = set(self.mul(self.identity, h) for h in sub)
        for g in range(self.order):
            if g not in covered:
                reps.append(g)
                covered.update(self.mul(g, h) for h in sub)
        return tuple(reps)


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def verify_sylow(group: FiniteGroup, sub: Iterable[int], p: int) -> bool:
    """True iff ``sub`` is a subgroup of order the exact ``p``-part of ``|G|``."""
    sub = list(sub)
    return group.is_subgroup(sub) and len(set(sub)) == _p_part(group.order, p)


def find_sylow(group: FiniteGroup, p: int) -> tuple[int, ...]:
    """Brute-force Sylow p-subgroup for small groups (``|G| <= 16``)."""
    if group.order > 16:
        raise ValueError("brute-force Sylow search is limited to |G| <= 16")
    target = _p_part(group.order, p)
    p_elems = [g for g in range(group.order) if _p_part(group.element_order(g), p) == group.element_order(g)]
    seen = {(group.identity,)}
    frontier = [(group.identity,)]
    best = (group.identity,)
    while frontier:
        nxt = []
        for h in frontier:
            for g in p_elems:
                if g in h:
                    continue
                k = group.closure(set(h) | {g})
                if len(k) == _p_part(len(k), p) and k not in seen:
                    seen.add(k)
                    nxt.append(k)
                    if len(k) > len(best):
                        best = k
        frontier = nxt
    assert len(best) == target
    return best


@dataclass(frozen=True, eq=False)
class GroupAction:
    """One automorphism matrix per group element; ``mats[g][:, j] = g(b_j)``."""

    algebra: FinDimAlgebra
    group: FiniteGroup
    mats: np.ndarray

    def __post_init__(self):
        m = np.mod(np.asarray(self.mats, dtype=np.int64), self.algebra.p)
        n = self.algebra.dim
        if m.shape != (self.group.order, n, n):
            raise ValueError(f"action/algebra dimension mismatch: expected {(self.group.order, n, n)}, got {m.shape}")
        object.__setattr__(self, "mats", m)

    @classmethod
    def trivial(cls, algebra: FinDimAlgebra, group: FiniteGroup) -> GroupAction:
        return cls(algebra, group, np.broadcast_to(el.identity(algebra.dim), (group.order, algebra.dim, algebra.dim)).copy())

    @classmethod
    def from_generators(cls, algebra: FinDimAlgebra, group: FiniteGroup, gens: Mapping[int, np.ndarray]) -> GroupAction:
        """Extend automorphisms of generators to the whole group via the table."""
        p, n = algebra.p, algebra.dim
        known = {group.identity: el.identity(n)}
        gens = {int(g): np.mod(np.asarray(m, dtype=np.int64), p) for g, m in gens.items()}
        if group.identity in gens and not np.array_equal(gens[group.identity], known[group.identity]):
            raise ValueError("the identity element must act trivially")
        frontier = [group.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s, ms in gens.items():
                    gs = group.mul(g, s)
                    m = el.matmul(known[g], ms, p=p)
                    if gs in known:
                        if not np.array_equal(known[gs], m):
                            raise ValueError(f"generator images are inconsistent with the group law at element {gs}")
                    else:
                        known[gs] = m
                        nxt.append(gs)
            frontier = nxt
        if len(known) != group.order:
            raise ValueError("the given generators do not generate the group")
        return cls(algebra, group, np.array([known[g] for g in range(group.order)]))

    def apply(self, g: int, x) -> np.ndarray:
        return np.mod(self.mats[g] @ x, self.algebra.p)

    def verify(self) -> list[str]:
        a, p, G = self.algebra, self.algebra.p, self.group
        bad = []
        for g in range(G.order):
            m = self.mats[g]
            if el.rank(m, p) != a.dim:
                bad.append(f"element {g}: not invertible")
            if not np.array_equal(np.mod(m @ a.unit, p), a.unit):
                bad.append(f"element {g}: does not fix the unit")
            # g(b_i b_j) == g(b_i) g(b_j)
            lhs = np.mod(np.einsum("kl,ijl->ijk", m, a.constants), p)
            rhs = np.mod(np.einsum("ai,bj,abk->ijk", m, m, a.constants), p)
            if not np.array_equal(lhs, rhs):
                bad.append(f"element {g}: not multiplicative")
        if not np.array_equal(self.mats[G.identity], el.identity(a.dim)):
            bad.append("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if not np.array_equal(el.matmul(self.mats[g], self.mats[h], p=p), self.mats[G.mul(g, h)]):
                    bad.append(f"phi_{g} phi_{h} != phi_{G.mul(g, h)}")
        return bad

    def restrict(self, sub: Sequence[int]) -> tuple[FiniteGroup, GroupAction]:
        """The action of a subgroup, re-indexed ``0..|H|-1`` in ``ordered_subgroup`` order."""
        elems = self.group.ordered_subgroup(sub)
        pos = {g: k for k, g in enumerate(elems)}
        table = np.array([[pos[self.group.mul(g, h)] for h in elems] for g in elems])
        h = FiniteGroup(table, tuple(self.group.labels[g] for g in elems))
        return h, GroupAction(self.algebra, h, self.mats[list(elems)])


# ---------------------------------------------------------------------------
# Skew group algebras and fixed algebras


@dataclass(frozen=True, eq=False)
class SkewGroupAlgebra(FinDimAlgebra):
    """``Λ H`` for a subgroup ``H`` (given by ``elements``) of the acting group.

    Basis element ``b_i ⊗ h`` sits at index ``pos(h) * dim Λ + i`` where
    ``pos`` follows ``elements`` (identity first).
    """

    base: FinDimAlgebra | None = field(default=None, repr=False)
    action: GroupAction | None = field(default=None, repr=False)
    elements: tuple[int, ...] = ()

    def index(self, i: int, g: int) -> int:
        return self.elements.index(g) * self.base.dim + i

    def tensor(self, x, g: int) -> np.ndarray:
        """Coordinates of ``x ⊗ g``."""
        out = self.zero()
        k = self.elements.index(g) * self.base.dim
        out[k : k + self.base.dim] = x
        return np.mod(out, self.p)

    def group_element(self, g: int) -> np.ndarray:
        return self.tensor(self.base.unit, g)

    @cached_property
    def base_embedding(self) -> np.ndarray:
        """Columns: ``b_j ⊗ 1`` for the basis of ``Λ``."""
        n = self.base.dim
        e = np.zeros((self.dim, n), dtype=np.int64)
        e[:n, :n] = el.identity(n)
        return e

    def base_subalgebra(self) -> FinDimAlgebra:
        return FinDimAlgebra(self.p, self.base.constants, self.base.unit, self.base.labels, self.base.name,
                             parent=self, embedding=self.base_embedding)

    def sub_embedding(self, smaller: SkewGroupAlgebra) -> np.ndarray:
        """Columns: the basis of a skew subalgebra ``Λ H`` inside this ``Λ G``."""
        n = self.base.dim
        e = np.zeros((self.dim, smaller.dim), dtype=np.int64)
        for k, h in enumerate(smaller.elements):
            big = self.elements.index(h)
            e[big * n : (big + 1) * n, k * n : (k + 1) * n] = el.identity(n)
        return e


def skew_group_algebra(a: FinDimAlgebra, act: GroupAction, sub: Sequence[int] | None = None) -> SkewGroupAlgebra:
    """``Λ H`` with product ``(λ ⊗ g)(μ ⊗ h) = λ g(μ) ⊗ gh``.

    ``sub`` selects a subgroup ``H`` (default: the whole group).
    """
    if act.algebra.dim != a.dim:
        raise ValueError("action/algebra dimension mismatch")
    G, p, n = act.group, a.p, a.dim
    elems = G.ordered_subgroup(range(G.order) if sub is None else sub)
    pos = {g: k for k, g in enumerate(elems)}
    m = len(elems)
    d = n * m
    constants = np.zeros((d, d, d), dtype=np.int64)
    for g in elems:
        # b_i g(b_j) = sum_k phi_g[k, j] b_i b_k
        twisted = np.mod(np.einsum("kj,ikl->ijl", act.mats[g], a.constants), p)
        for h in elems:
            gh = pos[G.mul(g, h)]
            constants[pos[g] * n : (pos[g] + 1) * n, pos[h] * n : (pos[h] + 1) * n, gh * n : (gh + 1) * n] = twisted
    unit = np.zeros(d, dtype=np.int64)
    unit[:n] = a.unit
    labels = tuple(f"{lab}⊗{G.labels[g]}" for g in elems for lab in a.labels)
    name = f"{a.name or 'Λ'}[{'G' if m == G.order else ('1' if m == 1 else 'H')}]"
    return SkewGroupAlgebra(p, constants, unit, labels, name, base=a, action=act, elements=elems)


@dataclass(frozen=True, eq=False)
class FixedAlgebra(FinDimAlgebra):
    """``Λ^S``; ``trace_spans`` records whether ``{Σ_g g(μ)}`` is all of it."""

    trace_spans: bool = False


def fixed_algebra(a: FinDimAlgebra, act: GroupAction, sub: Sequence[int]) -> FixedAlgebra:
    """Subalgebra of elements fixed by every ``g`` in the subgroup ``sub``.

    The fixed space is also compared with the span of the orbit sums
    ``Σ_{g∈S} g(μ)``; the outcome is stored as ``trace_spans``.
    """
    G, p, n = act.group, a.p, a.dim
    if not G.is_subgroup(sub):
        raise ValueError(f"{sorted(set(sub))} is not a subgroup")
    sub = G.ordered_subgroup(sub)
    stacked = np.zeros((0, n), dtype=np.int64)
    for g in sub:
        stacked = np.vstack([stacked, np.mod(act.mats[g] - el.identity(n), p)])
    basis = el.kernel_basis(stacked, p).T
    trace = np.mod(sum(act.mats[g] for g in sub), p)
    spans = el.same_column_space(basis, trace, p)
    name = f"{a.name or 'Λ'}^S"
    return subalgebra(a, basis, name=name, cls=FixedAlgebra, trace_spans=bool(spans))


# ---------------------------------------------------------------------------
# Idempotents


def verify_complete_idempotent_set(a: FinDimAlgebra, idempotents, check_primitive: bool = True) -> list[str]:
    """Violations of: idempotent, orthogonal, summing to 1, primitive.

    Primitivity of ``e`` is tested by asking whether ``e a e`` is local.
    """
    from .radical import is_local

    es = np.atleast_2d(np.mod(np.asarray(idempotents, dtype=np.int64), a.p))
    bad = []
    for i, e in enumerate(es):
        if not np.array_equal(a.mul(e, e), e):
            bad.append(f"e{i} is not idempotent")
        if not np.any(e):
            bad.append(f"e{i} is zero")
        for j, f in enumerate(es):
            if i != j and np.any(a.mul(e, f)):
                bad.append(f"e{i} e{j} != 0")
    if not np.array_equal(np.mod(es.sum(axis=0), a.p), a.unit):
        bad.append("idempotents do not sum to 1")
    if check_primitive and not bad:
        for i, e in enumerate(es):
            if not is_local(corner_algebra(a, e)):
                bad.append(f"e{i} is not primitive")
    return bad


@dataclass(frozen=True)
class IdempotentAction:
    closed: bool
    free: bool
    permutation: dict  # g -> tuple of image indices (None where g(e_i) ∉ E)


def check_action_on_idempotents(act: GroupAction, idempotents, sub: Sequence[int]) -> IdempotentAction:
    """Whether ``S`` permutes ``E``, and whether it does so freely."""
    es = np.atleast_2d(np.mod(np.asarray(idempotents, dtype=np.int64), act.algebra.p))
    table = {}
    closed = True
    free = True
    for g in act.group.ordered_subgroup(sub):
        images = []
        for i, e in enumerate(es):
            ge = act.apply(g, e)
            hit = [j for j, f in enumerate(es) if np.array_equal(ge, f)]
            images.append(hit[0] if hit else None)
            if not hit:
                closed = False
            elif g != act.group.identity and hit[0] == i:
                free = False
        table[g] = tuple(images)
    return IdempotentAction(closed, closed and free, table)


# ---------------------------------------------------------------------------
# Bimodule splitting


@dataclass(frozen=True, eq=False)
class SplittingData:
    """A ``Λ^S``-bimodule retraction ``ζ`` of ``Λ`` onto ``Λ^S``.

    ``zeta`` maps ``Λ`` coordinates to ``Λ^S`` coordinates; ``projection``
    is the same map viewed as an idempotent endomorphism of ``Λ``;
    ``complement`` spans ``B = ker ζ``.
    """

    zeta: np.ndarray
    projection: np.ndarray
    complement: np.ndarray


def _bimodule_equations(a: FinDimAlgebra, fixed: FinDimAlgebra):
    p, n, f = a.p, a.dim, fixed.dim
    emb = fixed.embedding
    rows = []
    rhs = []
    # ζ restricted to Λ^S is the identity: Z @ emb = I
    rows.append(np.kron(el.identity(f), emb.T))
    rhs.append(el.identity(f).reshape(-1))
    for g in fixed.generators:
        x = emb[:, g]
        for big, small in ((a.left_matrix(x), fixed.left_regular[g]), (a.right_matrix(x), fixed.right_regular[g])):
            # Z big = small Z
            rows.append(np.mod(np.kron(el.identity(f), big.T) - np.kron(small, el.identity(n)), p))
            rhs.append(np.zeros(f * n, dtype=np.int64))
    return np.vstack(rows), np.concatenate(rhs)


def bimodule_splitting(a: FinDimAlgebra, fixed: FinDimAlgebra) -> SplittingData | None:
    """Solve for a bimodule projection ``ζ: Λ → Λ^S`` fixing ``Λ^S``; ``None`` if none exists."""
    if fixed.parent is not a:
        raise ValueError("fixed must be a subalgebra of a")
    p, n, f = a.p, a.dim, fixed.dim
    m, b = _bimodule_equations(a, fixed)
    z = el.solve(m, b, p)
    if z is None:
        return None
    zeta = z.reshape(f, n)
    proj = el.matmul(fixed.embedding, zeta, p=p)
    comp = el.kernel_basis(zeta, p).T
    return SplittingData(zeta, proj, comp)


def splitting_violations(a: FinDimAlgebra, fixed: FinDimAlgebra, zeta) -> list[str]:
    """Check a candidate ``ζ`` (``Λ^S``-coordinates valued) against every defining identity."""
    p = a.p
    zeta = np.mod(np.asarray(zeta, dtype=np.int64), p)
    emb = fixed.embedding
    bad = []
    if not np.array_equal(el.matmul(zeta, emb, p=p), el.identity(fixed.dim)):
        bad.append("zeta is not the identity on the fixed algebra")
    for s in range(fixed.dim):
        x = emb[:, s]
        for t in range(a.dim):
            for u in range(fixed.dim):
                y = emb[:, u]
                lhs = zeta @ a.mul(a.mul(x, a.basis_vector(t)), y) % p
                rhs = fixed.mul(fixed.mul(fixed.basis_vector(s), zeta[:, t]), fixed.basis_vector(u))
                if not np.array_equal(lhs, rhs):
                    bad.append(f"zeta(a x b) != a zeta(x) b for a={s}, x={t}, b={u}")
    proj = el.matmul(emb, zeta, p=p)
    if not np.array_equal(el.matmul(proj, proj, p=p), proj):
        bad.append("projection is not idempotent")
    return bad
