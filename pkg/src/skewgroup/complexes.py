"""Bounded complexes of projective modules and strong global dimension.

A :class:`PerfectComplex` stores its terms in degrees ``start, start+1, …``
with differentials ``d^i: C^i → C^{i+1}`` as plain matrices.  Terms built by
this module are direct sums of type-representative PIMs (``types`` records
which), which makes minimality a block-by-block question.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algebra import FinDimAlgebra, SkewGroupAlgebra, SplittingData
from .functors import (
    average_split,
    coset_system,
    induce,
    induce_map,
    restrict,
    subalgebra_split,
    tensor_map,
    unit_split,
)
from .homology import (
    gldim,
    indecomposables_nakayama,
    is_indecomposable,
    is_nakayama,
    minimal_resolution,
    module_radical,
    pim_sum,
    projective_cover,
    simples,
    structure,
)
from .modules import AModule, hom_space, is_module_map, restrict_to_subalgebra, zero_module
from .radical import check_split, is_local, radical_algebra

__all__ = [
    "PerfectComplex",
    "ChainMap",
    "ChainSplitPair",
    "stalk",
    "verify_complex",
    "length",
    "is_minimal",
    "normalize",
    "minimalize",
    "direct_sum_complex",
    "mapping_cone_identity",
    "homotopy_end",
    "is_indecomposable_complex",
    "from_resolution",
    "induce_complex",
    "restrict_complex",
    "subalgebra_complex_split",
    "average_split_complex",
    "unit_split_complex",
    "trim",
    "SgldimReport",
    "sgldim_search",
    "Verdict",
    "piecewise_hereditary_verdict",
]


@dataclass(frozen=True, eq=False)
class PerfectComplex:
    algebra: FinDimAlgebra
    terms: tuple[AModule, ...]
    diffs: tuple[np.ndarray, ...]
    start: int = 0
    types: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if len(self.terms) and len(self.diffs) != len(self.terms) - 1:
            raise ValueError("need one differential between consecutive terms")
        p = self.algebra.p
        diffs = []
        for i, d in enumerate(self.diffs):
            d = np.mod(np.asarray(d, dtype=np.int64), p).reshape(self.terms[i + 1].dim, self.terms[i].dim)
            diffs.append(d)
        object.__setattr__(self, "diffs", tuple(diffs))

    @property
    def end(self) -> int:
        return self.start + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.start, self.start + len(self.terms))

    def term(self, i: int) -> AModule:
        k = i - self.start
        return self.terms[k] if 0 <= k < len(self.terms) else zero_module(self.algebra)

    def diff(self, i: int) -> np.ndarray:
        """``d^i: C^i → C^{i+1}`` (a zero matrix outside the stored range)."""
        k = i - self.start
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return np.zeros((self.term(i + 1).dim, self.term(i).dim), dtype=np.int64)

    def shift(self, k: int) -> PerfectComplex:
        """Translate the support by ``k`` degrees (differentials unchanged)."""
        return PerfectComplex(self.algebra, self.terms, self.diffs, self.start + k, self.types)

    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    def multiplicities(self) -> tuple[tuple[int, ...], ...] | None:
        if self.types is None:
            return None
        n = structure(self.algebra).n_types
        return tuple(tuple(ts.count(t) for t in range(n)) for ts in self.types)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "dims": list(self.dims()),
            "multiplicities": [list(v) for v in self.multiplicities()] if self.types is not None else None,
            "differentials": [d.tolist() for d in self.diffs],
        }


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Per-degree matrices ``f^i: C^i → D^i``; missing degrees are zero."""

    source: PerfectComplex
    target: PerfectComplex
    maps: dict

    def at(self, i: int) -> np.ndarray:
        if i in self.maps:
            return self.maps[i]
        return np.zeros((self.target.term(i).dim, self.source.term(i).dim), dtype=np.int64)

    def _degrees(self):
        lo = min(self.source.start, self.target.start)
        hi = max(self.source.end, self.target.end)
        return range(lo - 1, hi + 1)

    def is_valid(self) -> bool:
        p = self.source.algebra.p
        for i in self._degrees():
            f = self.at(i)
            if f.size and not is_module_map(f, self.source.term(i), self.target.term(i)):
                return False
            lhs = el.matmul(self.target.diff(i), f, p=p) if f.size else np.zeros((self.target.term(i + 1).dim, f.shape[1]), dtype=np.int64)
            rhs = el.matmul(self.at(i + 1), self.source.diff(i), p=p)
            if lhs.shape == rhs.shape and np.any(lhs != rhs):
                return False
        return True

    def compose(self, other: ChainMap) -> ChainMap:
        """``self ∘ other``."""
        p = self.source.algebra.p
        degs = set(self.maps) & set(other.maps)
        return ChainMap(other.source, self.target, {i: el.matmul(self.maps[i], other.maps[i], p=p) for i in degs})

    def is_identity(self) -> bool:
        if self.source is not self.target and self.source.dims() != self.target.dims():
            return False
        return all(np.array_equal(self.at(i), el.identity(self.source.term(i).dim)) for i in self.source.degrees)


@dataclass(frozen=True, eq=False)
class ChainSplitPair:
    forward: ChainMap
    backward: ChainMap

    def is_split(self) -> bool:
        return self.backward.compose(self.forward).is_identity()


def _identity_map(c: PerfectComplex) -> ChainMap:
    return ChainMap(c, c, {i: el.identity(c.term(i).dim) for i in c.degrees})


def stalk(m: AModule, degree: int = 0, types: tuple[int, ...] | None = None) -> PerfectComplex:
    return PerfectComplex(m.algebra, (m,), (), degree, None if types is None else (tuple(types),))


# ---------------------------------------------------------------------------
# Checks


def is_minimal(c: PerfectComplex) -> bool:
    """Every differential lands in the radical of the next term."""
    rad = radical_algebra(c.algebra)
    p = c.algebra.p
    for k, d in enumerate(c.diffs):
        if not np.any(d):
            continue
        target = c.terms[k + 1]
        rm = module_radical(target, rad)
        if el.rank(np.hstack([rm, d]), p) != rm.shape[1]:
            return False
    return True


def verify_complex(c: PerfectComplex, minimal: bool = True) -> list[str]:
    """Violations of ``d² = 0``, module-map differentials, projective terms and (optionally) minimality."""
    p = c.algebra.p
    bad = []
    for k, d in enumerate(c.diffs):
        i = c.start + k
        if not is_module_map(d, c.terms[k], c.terms[k + 1]):
            bad.append(f"d^{i} is not a module map")
    for k in range(len(c.diffs) - 1):
        if np.any(el.matmul(c.diffs[k + 1], c.diffs[k], p=p)):
            bad.append(f"d^{c.start + k + 1} d^{c.start + k} != 0")
    for k, t in enumerate(c.terms):
        if t.dim and projective_cover(t).module.dim != t.dim:
            bad.append(f"term in degree {c.start + k} is not projective")
    if minimal and not is_minimal(c):
        bad.append("complex is not minimal")
    return bad


def trim(c: PerfectComplex) -> PerfectComplex:
    """Drop zero terms at both ends (the zero complex becomes a single zero term)."""
    nz = [k for k, t in enumerate(c.terms) if t.dim]
    if not nz:
        return PerfectComplex(c.algebra, (zero_module(c.algebra),), (), 0, ((),))
    lo, hi = nz[0], nz[-1]
    types = c.types[lo : hi + 1] if c.types is not None else None
    return PerfectComplex(c.algebra, c.terms[lo : hi + 1], c.diffs[lo:hi], c.start + lo, types)


def length(c: PerfectComplex) -> int:
    """``s - r`` for the outermost nonzero degrees; the zero complex has length 0."""
    t = trim(c)
    return len(t.terms) - 1


# ---------------------------------------------------------------------------
# Normal form and minimalization


def normalize(c: PerfectComplex) -> tuple[PerfectComplex, ChainMap, ChainMap]:
    """Rewrite every term as a sum of type-representative PIMs.

    Returns ``(c', to, back)`` with chain isomorphisms ``to: c → c'`` and
    ``back: c' → c``.
    """
    p = c.algebra.p
    if c.types is not None:
        return c, _identity_map(c), _identity_map(c)
    covers = [projective_cover(t) for t in c.terms]
    for t, cv in zip(c.terms, covers):
        if cv.module.dim != t.dim:
            raise ValueError("term is not projective")
    epis = [cv.epi for cv in covers]
    invs = [el.inverse(e, p) if e.size else e for e in epis]
    diffs = tuple(el.matmul(invs[k + 1], d, epis[k], p=p) for k, d in enumerate(c.diffs))
    new = PerfectComplex(c.algebra, tuple(cv.module for cv in covers), diffs, c.start, tuple(cv.types for cv in covers))
    to = ChainMap(c, new, {c.start + k: invs[k] for k in range(len(c.terms))})
    back = ChainMap(new, c, {c.start + k: epis[k] for k in range(len(c.terms))})
    return new, to, back


def _blocks(types: tuple[int, ...], a: FinDimAlgebra) -> list[np.ndarray]:
    st = structure(a)
    out, off = [], 0
    for t in types:
        d = st.type_pim(t).dim
        out.append(np.arange(off, off + d))
        off += d
    return out


def minimalize(c: PerfectComplex) -> tuple[PerfectComplex, ChainMap, ChainMap]:
    """Gaussian elimination of contractible ``P → P`` summands.

    Returns ``(m, f, g)`` with chain maps ``f: c → m`` and ``g: m → c``
    satisfying ``f ∘ g = id``; ``m`` is minimal and homotopy equivalent to ``c``.
    """
    a, p = c.algebra, c.algebra.p
    cur, to, back = normalize(c)
    f_maps = dict(to.maps)
    g_maps = dict(back.maps)
    src = c
    while True:
        found = None
        for k, d in enumerate(cur.diffs):
            bs, bt = _blocks(cur.types[k], a), _blocks(cur.types[k + 1], a)
            for l, tl in enumerate(cur.types[k]):
                for kk, tk in enumerate(cur.types[k + 1]):
                    if tl != tk:
                        continue
                    blk = d[np.ix_(bt[kk], bs[l])]
                    if el.rank(blk, p) == len(bs[l]):
                        found = (k, l, kk)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        k, l, kk = found
        d = cur.diffs[k]
        bs, bt = _blocks(cur.types[k], a), _blocks(cur.types[k + 1], a)
        il, jk = bs[l], bt[kk]
        ib = np.setdiff1d(np.arange(d.shape[1]), il)
        jb = np.setdiff1d(np.arange(d.shape[0]), jk)
        phi_inv = el.inverse(d[np.ix_(jk, il)], p)
        delta, gamma, eps = d[np.ix_(jk, ib)], d[np.ix_(jb, il)], d[np.ix_(jb, ib)]
        new_d = np.mod(eps - gamma @ phi_inv @ delta, p)
        types_i = cur.types[k][:l] + cur.types[k][l + 1 :]
        types_j = cur.types[k + 1][:kk] + cur.types[k + 1][kk + 1 :]
        terms = list(cur.terms)
        types = list(cur.types)
        diffs = list(cur.diffs)
        terms[k], terms[k + 1] = pim_sum(a, types_i), pim_sum(a, types_j)
        types[k], types[k + 1] = types_i, types_j
        diffs[k] = new_d
        if k > 0:
            diffs[k - 1] = cur.diffs[k - 1][ib, :]
        if k + 1 < len(diffs):
            diffs[k + 1] = cur.diffs[k + 1][:, jb]
        new = PerfectComplex(a, tuple(terms), tuple(diffs), cur.start, tuple(types))
        # f: cur → new and g: new → cur in degrees i = start+k and i+1
        i = cur.start + k
        fi = el.identity(d.shape[1])[ib, :]
        fi1 = np.zeros((len(jb), d.shape[0]), dtype=np.int64)
        fi1[:, jk] = np.mod(-gamma @ phi_inv, p)
        fi1[:, jb] = el.identity(len(jb))
        gi = np.zeros((d.shape[1], len(ib)), dtype=np.int64)
        gi[il, :] = np.mod(-phi_inv @ delta, p)
        gi[ib, :] = el.identity(len(ib))
        gi1 = el.identity(d.shape[0])[:, jb]
        for deg in cur.degrees:
            if deg == i:
                f_maps[deg] = el.matmul(fi, f_maps[deg], p=p)
                g_maps[deg] = el.matmul(g_maps[deg], gi, p=p)
            elif deg == i + 1:
                f_maps[deg] = el.matmul(fi1, f_maps[deg], p=p)
                g_maps[deg] = el.matmul(g_maps[deg], gi1, p=p)
        cur = new
    cur = trim(cur)
    keep = set(cur.degrees)
    f_maps = {i: f for i, f in f_maps.items() if i in keep}
    g_maps = {i: g for i, g in g_maps.items() if i in keep}
    return cur, ChainMap(src, cur, f_maps), ChainMap(cur, src, g_maps)


def direct_sum_complex(c: PerfectComplex, d: PerfectComplex) -> PerfectComplex:
    """Degreewise direct sum (supports are merged)."""
    from .modules import direct_sum

    a, _p = c.algebra, c.algebra.p
    lo, hi = min(c.start, d.start), max(c.end, d.end)
    terms, types, diffs = [], [], []
    for i in range(lo, hi + 1):
        x, y = c.term(i), d.term(i)
        terms.append(direct_sum(x, y) if x.dim and y.dim else (x if x.dim else y))
        if c.types is not None and d.types is not None:
            tx = c.types[i - c.start] if c.start <= i <= c.end else ()
            ty = d.types[i - d.start] if d.start <= i <= d.end else ()
            types.append(tx + ty)
    for i in range(lo, hi):
        dx, dy = c.diff(i), d.diff(i)
        m = np.zeros((dx.shape[0] + dy.shape[0], dx.shape[1] + dy.shape[1]), dtype=np.int64)
        m[: dx.shape[0], : dx.shape[1]] = dx
        m[dx.shape[0] :, dx.shape[1] :] = dy
        diffs.append(m)
    return PerfectComplex(a, tuple(terms), tuple(diffs), lo, tuple(types) if types else None)


def mapping_cone_identity(c: PerfectComplex) -> PerfectComplex:
    """Cone of ``id_c``: ``C^{i+1} ⊕ C^i`` with ``d = [[-d, 0], [id, d]]``; contractible."""
    a, p = c.algebra, c.algebra.p
    lo, hi = c.start - 1, c.end
    terms, types, diffs = [], [], []
    from .modules import direct_sum

    for i in range(lo, hi + 1):
        x, y = c.term(i + 1), c.term(i)
        terms.append(direct_sum(x, y) if x.dim and y.dim else (x if x.dim else y))
        if c.types is not None:
            tx = c.types[i + 1 - c.start] if c.start <= i + 1 <= c.end else ()
            ty = c.types[i - c.start] if c.start <= i <= c.end else ()
            types.append(tx + ty)
    for i in range(lo, hi):
        # source C^{i+1} ⊕ C^i, target C^{i+2} ⊕ C^{i+1}
        d1, d0 = c.diff(i + 1), c.diff(i)
        s1, s0 = c.term(i + 1).dim, c.term(i).dim
        t2, t1 = c.term(i + 2).dim, c.term(i + 1).dim
        m = np.zeros((t2 + t1, s1 + s0), dtype=np.int64)
        m[:t2, :s1] = -d1
        m[t2:, :s1] = el.identity(s1)
        m[t2:, s1:] = d0
        diffs.append(np.mod(m, p))
    return PerfectComplex(a, tuple(terms), tuple(diffs), lo, tuple(types) if types else None)


# ---------------------------------------------------------------------------
# Homotopy endomorphisms


def _flat_offsets(c: PerfectComplex) -> list[int]:
    offs = [0]
    for t in c.terms:
        offs.append(offs[-1] + t.dim * t.dim)
    return offs


def homotopy_end(c: PerfectComplex) -> FinDimAlgebra:
    """Chain endomorphisms of ``c`` modulo null-homotopic ones, as an algebra.

    Both spaces are computed explicitly: chain maps as the kernel of the
    commutation equations inside the degreewise Hom spaces, null-homotopies
    as the image of ``h ↦ d h + h d``.
    """
    _a, p = c.algebra, c.algebra.p
    n = len(c.terms)
    dims = [t.dim for t in c.terms]
    offs = _flat_offsets(c)
    total = offs[-1]
    if total == 0:
        return FinDimAlgebra(p, np.zeros((0, 0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64), name="End_K(0)")
    homs = [hom_space(t, t) for t in c.terms]
    # parameter space: coefficients on the Hom bases, one block per degree
    pcount = [h.shape[0] for h in homs]
    poffs = np.concatenate([[0], np.cumsum(pcount)]).astype(int)
    expand = np.zeros((total, poffs[-1]), dtype=np.int64)
    for k, h in enumerate(homs):
        if pcount[k]:
            expand[offs[k] : offs[k + 1], poffs[k] : poffs[k + 1]] = h.reshape(pcount[k], -1).T
    eqs = []
    for k in range(n - 1):
        d = c.diffs[k]
        # d f^k - f^{k+1} d, each f in row-major flattening
        rows = np.zeros((dims[k + 1] * dims[k], total), dtype=np.int64)
        rows[:, offs[k] : offs[k + 1]] = np.kron(d, el.identity(dims[k]))
        rows[:, offs[k + 1] : offs[k + 2]] = np.mod(rows[:, offs[k + 1] : offs[k + 2]] - np.kron(el.identity(dims[k + 1]), d.T), p)
        eqs.append(rows)
    if eqs:
        sys = el.matmul(np.vstack(eqs), expand, p=p)
        coeffs = el.kernel_basis(sys, p)
    else:
        coeffs = el.identity(poffs[-1])
    chain = el.matmul(expand, coeffs.T, p=p) if coeffs.shape[0] else np.zeros((total, 0), dtype=np.int64)
    # null-homotopies: h^k: C^k → C^{k-1}
    null_cols = []
    for k in range(1, n):
        hb = hom_space(c.terms[k], c.terms[k - 1])
        for h in hb:
            v = np.zeros(total, dtype=np.int64)
            # contributes d^{k-1} h^k on degree k and h^k d^{k-1} on degree k-1
            v[offs[k] : offs[k + 1]] = el.matmul(c.diffs[k - 1], h, p=p).reshape(-1)
            v[offs[k - 1] : offs[k]] = np.mod(v[offs[k - 1] : offs[k]] + el.matmul(h, c.diffs[k - 1], p=p).reshape(-1), p)
            null_cols.append(v)
    null = el.column_space(np.array(null_cols).T, p) if null_cols else np.zeros((total, 0), dtype=np.int64)
    chain = el.column_space(chain, p)
    comp_coords = el.complement_columns(el.coordinates(chain, null, p) if null.shape[1] else np.zeros((chain.shape[1], 0), dtype=np.int64), chain.shape[1], p)
    quot = el.matmul(chain, comp_coords, p=p)  # representatives of a basis of the quotient
    full = np.hstack([quot, null])
    q = quot.shape[1]

    def compose(u, v):
        out = np.zeros(total, dtype=np.int64)
        for k in range(n):
            dk = dims[k]
            x = u[offs[k] : offs[k + 1]].reshape(dk, dk)
            y = v[offs[k] : offs[k + 1]].reshape(dk, dk)
            out[offs[k] : offs[k + 1]] = el.matmul(x, y, p=p).reshape(-1)
        return out

    constants = np.zeros((q, q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            coords = el.coordinates(full, compose(quot[:, i], quot[:, j]), p)
            constants[i, j] = coords[:q]
    ident = np.concatenate([el.identity(dk).reshape(-1) for dk in dims])
    unit = el.coordinates(full, ident, p)[:q]
    return FinDimAlgebra(p, constants, unit, name="End_K")


def is_indecomposable_complex(c: PerfectComplex) -> bool:
    """``c`` is nonzero and its homotopy endomorphism algebra is local."""
    return is_local(homotopy_end(c))


# ---------------------------------------------------------------------------
# Resolutions and functors


def from_resolution(m: AModule, cutoff: int = 10) -> PerfectComplex:
    """Minimal projective resolution of ``m`` as a complex in degrees ``-n … 0``."""
    res = minimal_resolution(m, cutoff)
    if not res.complete:
        raise ValueError(f"projective dimension is not exact within cutoff {cutoff}")
    n = len(res.terms) - 1
    terms = tuple(reversed(res.terms))
    types = tuple(reversed(res.types))
    diffs = tuple(reversed(res.differentials))
    return PerfectComplex(m.algebra, terms, diffs, -n, types)


def induce_complex(c: PerfectComplex, big: SkewGroupAlgebra) -> PerfectComplex:
    small = c.algebra
    t = coset_system(big, small).index
    terms = tuple(induce(x, big) for x in c.terms)
    diffs = tuple(induce_map(d, t, c.algebra.p) for d in c.diffs)
    return PerfectComplex(big, terms, diffs, c.start)


def restrict_complex(c: PerfectComplex, small: SkewGroupAlgebra) -> PerfectComplex:
    terms = tuple(restrict(x, small) for x in c.terms)
    return PerfectComplex(small, terms, c.diffs, c.start)


def unit_split_complex(c: PerfectComplex, big: SkewGroupAlgebra) -> tuple[PerfectComplex, ChainSplitPair]:
    """``c↑↓`` with the chain maps ``ι•`` and ``δ•``."""
    rt = restrict_complex(induce_complex(c, big), c.algebra)
    fwd, bwd = {}, {}
    for k, x in enumerate(c.terms):
        _, sp = unit_split(x, big)
        fwd[c.start + k] = sp.forward.matrix
        bwd[c.start + k] = sp.backward.matrix
    return rt, ChainSplitPair(ChainMap(c, rt, fwd), ChainMap(rt, c, bwd))


def average_split_complex(c: PerfectComplex, small: SkewGroupAlgebra) -> tuple[PerfectComplex, ChainSplitPair]:
    """``c↓↑`` with ``θ•`` and ``ρ•``; raises :class:`IndexNotInvertible` when ``p | |G:H|``."""
    big = c.algebra
    rt = induce_complex(restrict_complex(c, small), big)
    fwd, bwd = {}, {}
    for k, x in enumerate(c.terms):
        _, sp = average_split(x, small)
        fwd[c.start + k] = sp.forward.matrix
        bwd[c.start + k] = sp.backward.matrix
    return rt, ChainSplitPair(ChainMap(c, rt, fwd), ChainMap(rt, c, bwd))


def subalgebra_complex_split(
    c: PerfectComplex, base: FinDimAlgebra, splitting: SplittingData | None
) -> tuple[PerfectComplex, PerfectComplex, ChainSplitPair]:
    """``(Λ ⊗_{Λ^S} c, its restriction to Λ^S, (ψ•, φ•))``."""
    if splitting is None:
        raise ValueError("no bimodule splitting ζ available")
    fixed = c.algebra
    pieces = [subalgebra_split(x, base, splitting) for x in c.terms]
    tensors = [t for _, t, _ in pieces]
    diffs = tuple(tensor_map(tensors[k], tensors[k + 1], d) for k, d in enumerate(c.diffs))
    up = PerfectComplex(base, tuple(t.module for t in tensors), diffs, c.start)
    down = PerfectComplex(fixed, tuple(restrict_to_subalgebra(t.module, fixed, fixed.embedding) for t in tensors), diffs, c.start)
    fwd = {c.start + k: sp.forward.matrix for k, (_, _, sp) in enumerate(pieces)}
    bwd = {c.start + k: sp.backward.matrix for k, (_, _, sp) in enumerate(pieces)}
    return up, down, ChainSplitPair(ChainMap(c, down, fwd), ChainMap(down, c, bwd))


# ---------------------------------------------------------------------------
# Strong global dimension search


@dataclass(frozen=True, eq=False)
class SgldimReport:
    lower_bound: int
    witness: PerfectComplex | None
    exhaustive_up_to: tuple[int, int] | None
    closed_form: str | None = None
    candidates: int = 0
    sampled: bool = False

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "exhaustive_up_to": list(self.exhaustive_up_to) if self.exhaustive_up_to else None,
            "closed_form": self.closed_form,
            "candidates": self.candidates,
            "sampled": self.sampled,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def _rad_hom_pims(a: FinDimAlgebra) -> dict:
    """``(t, u) ↦`` basis of radical maps ``P_t → P_u`` (shape ``(k, dim P_u, dim P_t)``).

    A map ``A e_t → A e_u`` is right multiplication by some ``y ∈ e_t A e_u``;
    it is radical exactly when ``y ∈ e_t J e_u``.
    """
    st = structure(a)
    p = a.p
    rad = st.radical
    out = {}
    for t in range(st.n_types):
        et, bt = st.rep_idempotent(t), st.pim_basis[st.reps[t]]
        for u in range(st.n_types):
            eu, bu = st.rep_idempotent(u), st.pim_basis[st.reps[u]]
            ys = el.column_space(el.matmul(a.left_matrix(et), a.right_matrix(eu), rad, p=p), p) if rad.shape[1] else np.zeros((a.dim, 0), dtype=np.int64)
            linv = el.left_inverse(bu, p)
            mats = [el.matmul(linv, a.right_matrix(ys[:, k]), bt, p=p) for k in range(ys.shape[1])]
            out[(t, u)] = np.array(mats, dtype=np.int64).reshape(len(mats), bu.shape[1], bt.shape[1])
    return out


def _rad_hom_sum(radhom: dict, src: tuple[int, ...], tgt: tuple[int, ...], dims: dict) -> np.ndarray:
    """Basis of radical maps between PIM sums, block by block."""
    ds = sum(dims[t] for t in src)
    dt = sum(dims[u] for u in tgt)
    mats = []
    co = 0
    for t in src:
        ro = 0
        for u in tgt:
            for h in radhom[(t, u)]:
                m = np.zeros((dt, ds), dtype=np.int64)
                m[ro : ro + dims[u], co : co + dims[t]] = h
                mats.append(m)
            ro += dims[u]
        co += dims[t]
    return np.array(mats, dtype=np.int64).reshape(len(mats), dt, ds)


def _type_blocks(a: FinDimAlgebra) -> list[list[int]]:
    """Connected components of types under ``e_t A e_u ≠ 0``."""
    st = structure(a)
    p = a.p
    n = st.n_types
    adj = [[False] * n for _ in range(n)]
    for t in range(n):
        for u in range(n):
            m = el.matmul(a.left_matrix(st.rep_idempotent(t)), a.right_matrix(st.rep_idempotent(u)), p=p)
            adj[t][u] = adj[u][t] = adj[t][u] or bool(np.any(m))
    seen, blocks = set(), []
    for t in range(n):
        if t in seen:
            continue
        comp, stack = [], [t]
        seen.add(t)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if adj[x][y] and y not in seen:
                    seen.add(y)
                    stack.append(y)
        blocks.append(sorted(comp))
    return blocks


def _support_connected(types: list[tuple[int, ...]], diffs: list[np.ndarray], a: FinDimAlgebra) -> bool:
    """Whether the summand graph (edges = nonzero differential blocks) is connected."""
    nodes = [(k, l) for k, ts in enumerate(types) for l in range(len(ts))]
    idx = {v: i for i, v in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, d in enumerate(diffs):
        bs, bt = _blocks(types[k], a), _blocks(types[k + 1], a)
        for l in range(len(bs)):
            for kk in range(len(bt)):
                if np.any(d[np.ix_(bt[kk], bs[l])]):
                    parent[find(idx[(k, l)])] = find(idx[(k + 1, kk)])
    return len({find(i) for i in range(len(nodes))}) == 1


def _shapes(block: list[int], n_types: int, mult: int, terms: int):
    """Multiplicity-vector sequences, lexicographic, every term nonzero."""
    vecs = []
    for v in itertools.product(range(mult + 1), repeat=len(block)):
        if any(v):
            full = [0] * n_types
            for t, c in zip(block, v):
                full[t] = c
            vecs.append(tuple(full))
    vecs.sort()
    return itertools.product(vecs, repeat=terms)


def _types_of(vec: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(t for t, c in enumerate(vec) for _ in range(c))


def _space_bound(shape, radhom, dims, p) -> int:
    total = 1
    for k in range(len(shape) - 1):
        s, t = _types_of(shape[k]), _types_of(shape[k + 1])
        total *= p ** sum(len(radhom[(x, y)]) for x in s for y in t)
    return total


def _complexes_for_shape(shape, a, radhom, dims, rng=None):
    """Yield differential lists (all nonzero, ``d² = 0``) for a shape.

    Exhaustive in lexicographic coefficient order, or a single random draw
    when ``rng`` is given.
    """
    p = a.p
    types = [_types_of(v) for v in shape]
    bases = [_rad_hom_sum(radhom, types[k], types[k + 1], dims) for k in range(len(types) - 1)]

    def rec(k, prev):
        if k == len(bases):
            yield []
            return
        b = bases[k]
        if b.shape[0] == 0:
            return
        b.reshape(b.shape[0], -1).T  # columns: basis maps
        if prev is not None:
            # d^k d^{k-1} = 0 is linear in the coefficients of d^k
            comp = np.einsum("kij,jl->kil", b, prev) % p
            cons = el.kernel_basis(comp.reshape(b.shape[0], -1).T, p)
        else:
            cons = el.identity(b.shape[0])
        if cons.shape[0] == 0:
            return
        if rng is not None:
            for _ in range(8):
                c = rng.integers(0, p, cons.shape[0])
                if np.any(c):
                    break
            else:
                return
            choices = [c]
        else:
            choices = (np.array(c) for c in itertools.product(range(p), repeat=cons.shape[0]) if any(c))
        for c in choices:
            coeffs = np.mod(c @ cons, p)
            d = np.mod(np.tensordot(coeffs, b, axes=1), p)
            if not np.any(d):
                continue
            for rest in rec(k + 1, d):
                yield [d] + rest

    yield from rec(0, None)


def sgldim_search(
    a: FinDimAlgebra,
    length_bound: int = 3,
    mult_bound: int = 2,
    budget: int = 10**6,
    seed: int = 0,
    cutoff: int = 10,
    force_search: bool = False,
    exhaustive_limit: int = 2**24,
) -> SgldimReport:
    """Largest length of an indecomposable minimal perfect complex within the bounds.

    Semisimple and hereditary algebras are answered in closed form unless
    ``force_search`` is set.  Otherwise resolutions of known indecomposables
    seed the bound, and complexes with PIM multiplicities ``≤ mult_bound``
    and length ``≤ length_bound`` are enumerated (or sampled, when the space
    exceeds ``exhaustive_limit``), longest first.
    """
    check_split(a)
    st = structure(a)
    p = a.p
    if not force_search:
        if st.radical.shape[1] == 0:
            return SgldimReport(0, stalk(st.type_pim(0), 0, (0,)), None, "semisimple")
        g = gldim(a, cutoff=2)
        if g.is_exact and g.value <= 1:
            wit = None
            for s in simples(a):
                c = from_resolution(s, cutoff)
                if wit is None or length(c) > length(wit):
                    wit = c
            return SgldimReport(g.value, wit, None, "hereditary")

    # seeds: resolutions of indecomposables with exact pd
    best, witness = 0, stalk(st.type_pim(0), 0, (0,))
    mods = indecomposables_nakayama(a) if is_nakayama(a) else list(simples(a))
    for m in mods:
        try:
            c = from_resolution(m, cutoff)
        except ValueError:
            continue
        ln = length(c)
        if ln > best and is_indecomposable(m):
            best, witness = ln, c.shift(-c.start)

    radhom = _rad_hom_pims(a)
    dims = {t: st.type_pim(t).dim for t in range(st.n_types)}
    blocks = _type_blocks(a)
    lengths = [ln for ln in range(length_bound, best, -1) if ln >= 1]
    space = sum(
        _space_bound(shape, radhom, dims, p) for ln in lengths for blk in blocks for shape in _shapes(blk, st.n_types, mult_bound, ln + 1)
    )
    sampled = space > exhaustive_limit
    rng = np.random.default_rng(seed)
    checked = 0
    exhausted_budget = False

    def accept(types, diffs):
        terms = tuple(pim_sum(a, ts) for ts in types)
        c = PerfectComplex(a, terms, tuple(diffs), 0, tuple(types))
        if not _support_connected(list(types), diffs, a):
            return None
        return c if is_indecomposable_complex(c) else None

    if not sampled:
        for ln in lengths:
            found = None
            for blk in blocks:
                for shape in _shapes(blk, st.n_types, mult_bound, ln + 1):
                    types = [_types_of(v) for v in shape]
                    for diffs in _complexes_for_shape(shape, a, radhom, dims):
                        checked += 1
                        if checked > budget:
                            exhausted_budget = True
                            break
                        c = accept(types, diffs)
                        if c is not None:
                            found = c
                            break
                    if found is not None or exhausted_budget:
                        break
                if found is not None or exhausted_budget:
                    break
            if found is not None:
                best, witness = ln, found
                break
            if exhausted_budget:
                break
    else:
        all_shapes = [(ln, shape) for ln in lengths for blk in blocks for shape in _shapes(blk, st.n_types, mult_bound, ln + 1)]
        while checked < budget and all_shapes:
            ln, shape = all_shapes[int(rng.integers(0, len(all_shapes)))]
            if ln <= best:
                all_shapes = [(x, s) for x, s in all_shapes if x > best]
                continue
            for diffs in _complexes_for_shape(shape, a, radhom, dims, rng=rng):
                checked += 1
                c = accept([_types_of(v) for v in shape], diffs)
                if c is not None and ln > best:
                    best, witness = ln, c
        exhausted_budget = True
    exhaustive = None if (sampled or exhausted_budget) else (length_bound, mult_bound)
    return SgldimReport(best, witness, exhaustive, None, checked, sampled)


@dataclass(frozen=True)
class Verdict:
    """``kind`` is ``finite``, ``not_pw_hereditary`` or ``unknown``."""

    kind: str
    value: int | None = None
    reason: str = ""
    lower_bound: int | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "reason": self.reason, "lower_bound": self.lower_bound}

    def __str__(self) -> str:
        if self.kind == "finite":
            return f"finite({self.value})"
        if self.kind == "not_pw_hereditary":
            return f"not_pw_hereditary({self.reason})"
        return f"unknown(lower_bound >= {self.lower_bound})"


def piecewise_hereditary_verdict(
    a: FinDimAlgebra,
    length_bound: int = 3,
    mult_bound: int = 2,
    budget: int = 10**6,
    seed: int = 0,
    action_free: bool | None = None,
    use_gldim_certificate: bool = True,
    cutoff: int = 10,
) -> Verdict:
    """Decide piecewise heredity where the evidence allows it.

    A non-free action on the idempotents (``action_free=False``) or a
    certified infinite global dimension rules it out; closed forms or an
    exhaustive search that stays below the length bound give a finite value.
    """
    if action_free is False:
        return Verdict("not_pw_hereditary", reason="the subgroup action on the idempotents is not free")
    if use_gldim_certificate:
        g = gldim(a, cutoff)
        if g.is_infinite:
            return Verdict("not_pw_hereditary", reason=f"global dimension {g}")
    rep = sgldim_search(a, length_bound, mult_bound, budget, seed, cutoff)
    if rep.closed_form is not None:
        return Verdict("finite", rep.lower_bound, reason=rep.closed_form)
    if rep.exhaustive_up_to is not None and rep.lower_bound < length_bound:
        return Verdict("finite", rep.lower_bound, reason="exhaustive bounded search")
    return Verdict("unknown", lower_bound=rep.lower_bound)
