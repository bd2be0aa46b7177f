"""Projective covers, syzygies and the dimensions pd / gldim / fdim.

Every dimension is returned as a :class:`DimensionReport`.  Infinite
projective dimension is only ever claimed with a periodicity certificate
``Ω^s M ≅ Ω^t M``; otherwise the report degrades to "at least the cutoff".
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import exactlin as el
from .algebra import FinDimAlgebra, SkewGroupAlgebra
from .modules import (
    AModule,
    ModuleMap,
    direct_sum,
    endomorphism_algebra,
    hom_space,
    kernel_submodule,
    quotient_module,
    regular_module,
    restrict_to_subalgebra,
    submodule,
    zero_module,
)
from .radical import (
    check_split,
    is_local,
    lift_primitive_idempotents,
    radical_algebra,
    radical_power,
)

__all__ = [
    "DimensionReport",
    "AlgebraStructure",
    "structure",
    "pims",
    "simples",
    "pim_sum",
    "module_radical",
    "top_multiplicities",
    "ProjectiveCover",
    "projective_cover",
    "syzygy",
    "is_projective",
    "Resolution",
    "minimal_resolution",
    "pd",
    "gldim",
    "is_hereditary",
    "is_nakayama",
    "indecomposables_nakayama",
    "fdim",
    "decompose_module",
    "module_iso",
    "is_indecomposable",
    "natural_module",
    "fixed_points",
    "restrict_scalars_projectivity",
    "random_module",
    "DEFAULT_CUTOFF",
]

DEFAULT_CUTOFF = 10


@dataclass(frozen=True)
class DimensionReport:
    """``kind`` is ``exact``, ``at_least`` or ``infinite_certified``.

    ``witness`` holds the periodicity pair ``(s, t)`` of an infinite report.
    """

    kind: str
    value: int | None = None
    witness: tuple[int, int] | None = None

    @classmethod
    def exact(cls, n: int) -> DimensionReport:
        return cls("exact", int(n))

    @classmethod
    def at_least(cls, n: int) -> DimensionReport:
        return cls("at_least", int(n))

    @classmethod
    def infinite(cls, s: int, t: int) -> DimensionReport:
        return cls("infinite_certified", None, (int(s), int(t)))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite_certified"

    def __str__(self) -> str:
        if self.kind == "exact":
            return str(self.value)
        if self.kind == "at_least":
            return f">= {self.value}"
        return f"infinite (Ω^{self.witness[0]} ≅ Ω^{self.witness[1]})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "value": self.value}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> DimensionReport:
        kind = d["kind"]
        if kind not in ("exact", "at_least", "infinite_certified"):
            raise ValueError(f"unknown report kind {kind!r}")
        w = d.get("witness")
        if kind == "infinite_certified":
            if not w or len(w) != 2 or not int(w[0]) < int(w[1]):
                raise ValueError("infinite report needs a witness s < t")
            return cls.infinite(*w)
        if not isinstance(d.get("value"), int) or d["value"] < 0:
            raise ValueError("finite report needs a non-negative value")
        return cls(kind, d["value"])


# ---------------------------------------------------------------------------
# Structure of an algebra: idempotents, PIMs, simples


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    """Lifted idempotents grouped into isomorphism types of PIMs.

    ``types[i]`` is the type of idempotent ``i``; ``reps[t]`` the first
    idempotent of type ``t``.  ``pim_basis[i]`` spans ``A e_i`` inside
    ``A`` and ``pim_generator[i]`` holds the coordinates of ``e_i`` there.
    """

    algebra: FinDimAlgebra
    idempotents: np.ndarray
    types: tuple[int, ...]
    reps: tuple[int, ...]
    pim_modules: tuple[AModule, ...]
    pim_basis: tuple[np.ndarray, ...]
    pim_generator: tuple[np.ndarray, ...]
    simple_modules: tuple[AModule, ...]
    radical: np.ndarray

    @property
    def n_types(self) -> int:
        return len(self.reps)

    def rep_idempotent(self, t: int) -> np.ndarray:
        return self.idempotents[self.reps[t]]

    def type_pim(self, t: int) -> AModule:
        return self.pim_modules[self.reps[t]]

    def cartan(self) -> np.ndarray:
        """``C[s, t]`` = multiplicity of the simple of type ``s`` in the PIM of type ``t``."""
        a, p = self.algebra, self.algebra.p
        c = np.zeros((self.n_types, self.n_types), dtype=np.int64)
        for s in range(self.n_types):
            es = self.rep_idempotent(s)
            for t in range(self.n_types):
                et = self.rep_idempotent(t)
                c[s, t] = el.rank(el.matmul(a.left_matrix(es), a.right_matrix(et), p=p), p)
        return c


_STRUCT: "weakref.WeakKeyDictionary[FinDimAlgebra, AlgebraStructure]" = weakref.WeakKeyDictionary()


def structure(a: FinDimAlgebra, seed: int = 0) -> AlgebraStructure:
    """Idempotent/PIM data for a split algebra (cached per algebra)."""
    if a in _STRUCT:
        return _STRUCT[a]
    check_split(a)
    p = a.p
    idem = lift_primitive_idempotents(a, seed)
    rad = radical_algebra(a)
    n = len(idem)
    types = [-1] * n
    reps: list[int] = []
    for i in range(n):
        for t, r in enumerate(reps):
            corner = el.matmul(a.left_matrix(idem[r]), a.right_matrix(idem[i]), p=p)
            if not el.rank(np.hstack([rad, corner]), p) == rad.shape[1]:
                types[i] = t
                break
        if types[i] < 0:
            types[i] = len(reps)
            reps.append(i)
    pim_modules, pim_basis, pim_gen = [], [], []
    reg = regular_module(a)
    for i in range(n):
        cols = el.column_space(a.right_matrix(idem[i]), p)
        mod, _ = submodule(reg, cols, name=f"P{types[i] + 1}")
        pim_modules.append(mod)
        pim_basis.append(cols)
        pim_gen.append(el.coordinates(cols, idem[i], p))
    simple_modules = []
    for t, r in enumerate(reps):
        pim = pim_modules[r]
        s, _ = quotient_module(pim, module_radical(pim, rad), name=f"S{t + 1}")
        simple_modules.append(s)
    st = AlgebraStructure(
        a, idem, tuple(types), tuple(reps), tuple(pim_modules), tuple(pim_basis), tuple(pim_gen), tuple(simple_modules), rad
    )
    _STRUCT[a] = st
    return st


def pims(a: FinDimAlgebra) -> list[tuple[AModule, np.ndarray]]:
    """``(A e_i, e_i)`` for each lifted primitive idempotent."""
    st = structure(a)
    return [(st.pim_modules[i], st.idempotents[i]) for i in range(len(st.idempotents))]


def simples(a: FinDimAlgebra) -> list[AModule]:
    """One simple module per isomorphism class."""
    return list(structure(a).simple_modules)


def pim_sum(a: FinDimAlgebra, types: Sequence[int]) -> AModule:
    """Direct sum of the type-representative PIMs listed in ``types``."""
    st = structure(a)
    if not types:
        return zero_module(a)
    return direct_sum(*(st.type_pim(t) for t in types))


def module_radical(m: AModule, rad: np.ndarray | None = None) -> np.ndarray:
    """Column basis of ``rad(A) · m``."""
    rad = radical_algebra(m.algebra) if rad is None else rad
    if rad.shape[1] == 0 or m.dim == 0:
        return np.zeros((m.dim, 0), dtype=np.int64)
    mats = np.mod(np.tensordot(rad.T, m.action, axes=1), m.p)
    return el.column_space(np.hstack(list(mats)), m.p)


def top_multiplicities(m: AModule) -> np.ndarray:
    """Multiplicity of each simple type in ``m / rad m``."""
    st = structure(m.algebra)
    p = m.p
    radm = module_radical(m, st.radical)
    mult = np.zeros(st.n_types, dtype=np.int64)
    for t in range(st.n_types):
        et = m.act(st.rep_idempotent(t))
        mult[t] = el.rank(et, p) - el.rank(np.mod(et @ radm, p), p) if radm.shape[1] else el.rank(et, p)
    return mult


# ---------------------------------------------------------------------------
# Covers, syzygies, resolutions


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    module: AModule  # the PIM sum
    types: tuple[int, ...]
    epi: np.ndarray  # dim m x dim P


def projective_cover(m: AModule) -> ProjectiveCover:
    """Minimal projective ``P ↠ m``; ``P`` is a sum of type-representative PIMs."""
    a, p = m.algebra, m.p
    st = structure(a)
    if m.dim == 0:
        return ProjectiveCover(zero_module(a), (), np.zeros((0, 0), dtype=np.int64))
    radm = module_radical(m, st.radical)
    types: list[int] = []
    blocks = []
    for t in range(st.n_types):
        et = m.act(st.rep_idempotent(t))
        span = el.column_space(np.mod(et @ radm, p), p) if radm.shape[1] else np.zeros((m.dim, 0), dtype=np.int64)
        ambient = el.column_space(et, p)
        basis_t = st.pim_basis[st.reps[t]]
        for k in range(ambient.shape[1]):
            v = ambient[:, k]
            if el.in_column_space(span, v, p):
                continue
            span = np.hstack([span, v.reshape(-1, 1)])
            # the PIM basis element x e_t goes to x · v
            images = np.mod(np.einsum("ia,ist,t->sa", basis_t, m.action, v), p)
            types.append(t)
            blocks.append(images)
    epi = np.hstack(blocks)
    P = pim_sum(a, types)
    return ProjectiveCover(P, tuple(types), epi)


def syzygy(m: AModule) -> tuple[AModule, np.ndarray, ProjectiveCover]:
    """``Ω m`` together with its inclusion into the cover and the cover itself."""
    cover = projective_cover(m)
    omega, incl = kernel_submodule(cover.epi, cover.module) if cover.module.dim else (zero_module(m.algebra), np.zeros((0, 0), dtype=np.int64))
    return omega, incl, cover


def is_projective(m: AModule) -> bool:
    return projective_cover(m).module.dim == m.dim


@dataclass(frozen=True, eq=False)
class Resolution:
    """``P_n → … → P_0 → M``; ``differentials[k]`` maps ``P_{k+1}`` to ``P_k``."""

    module: AModule
    terms: tuple[AModule, ...]
    types: tuple[tuple[int, ...], ...]
    differentials: tuple[np.ndarray, ...]
    augmentation: np.ndarray
    complete: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_resolution(m: AModule, cutoff: int = DEFAULT_CUTOFF) -> Resolution:
    """Minimal projective resolution, truncated after ``cutoff + 1`` terms."""
    terms, types, diffs = [], [], []
    cur = m
    incl_prev = None
    aug = None
    complete = False
    for k in range(cutoff + 1):
        omega, incl, cover = syzygy(cur)
        terms.append(cover.module)
        types.append(cover.types)
        if k == 0:
            aug = cover.epi
        else:
            diffs.append(el.matmul(incl_prev, cover.epi, p=m.p))
        if omega.dim == 0:
            complete = True
            break
        cur, incl_prev = omega, incl
    return Resolution(m, tuple(terms), tuple(types), tuple(diffs), aug, complete)


def pd(m: AModule, cutoff: int = DEFAULT_CUTOFF) -> DimensionReport:
    """Projective dimension via iterated syzygies, with periodicity detection."""
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    if m.dim == 0:
        return DimensionReport.exact(0)
    omegas = [m]
    for n in range(cutoff + 1):
        cur = omegas[n]
        omega, _, cover = syzygy(cur)
        if omega.dim == 0:
            return DimensionReport.exact(n)
        for s in range(n):
            if omegas[s].dim == cur.dim and module_iso(omegas[s], cur) is not None:
                return DimensionReport.infinite(s, n)
        omegas.append(omega)
    return DimensionReport.at_least(cutoff)


def _sup(reports: Iterable[DimensionReport], cutoff: int) -> DimensionReport:
    reports = list(reports)
    inf = [r for r in reports if r.is_infinite]
    if inf:
        return inf[0]
    if any(r.kind == "at_least" for r in reports):
        return DimensionReport.at_least(max([cutoff] + [r.value for r in reports]))
    return DimensionReport.exact(max([0] + [r.value for r in reports]))


def gldim(a: FinDimAlgebra, cutoff: int = DEFAULT_CUTOFF) -> DimensionReport:
    """Maximum of ``pd`` over the simple modules."""
    check_split(a)
    return _sup((pd(s, cutoff) for s in simples(a)), cutoff)


def is_hereditary(a: FinDimAlgebra) -> bool:
    g = gldim(a, cutoff=2)
    return g.is_exact and g.value <= 1


# ---------------------------------------------------------------------------
# Nakayama algebras and finitistic dimension


def _layers_uniserial(a: FinDimAlgebra, right: bool) -> bool:
    st = structure(a)
    p = a.p
    for t in range(st.n_types):
        e = st.rep_idempotent(t)
        k = 0
        prev = None
        while True:
            jk = radical_power(a, k)
            mat = a.left_matrix(e) if right else a.right_matrix(e)
            layer_space = el.column_space(np.mod(mat @ jk, p), p) if jk.shape[1] else np.zeros((a.dim, 0), dtype=np.int64)
            if prev is not None:
                total = 0
                for u in range(st.n_types):
                    f = st.rep_idempotent(u)
                    side = a.right_matrix(f) if right else a.left_matrix(f)
                    hi = el.rank(np.mod(side @ prev, p), p) if prev.shape[1] else 0
                    lo = el.rank(np.mod(side @ layer_space, p), p) if layer_space.shape[1] else 0
                    total += hi - lo
                if total > 1:
                    return False
            if layer_space.shape[1] == 0:
                break
            prev = layer_space
            k += 1
    return True


def is_nakayama(a: FinDimAlgebra) -> bool:
    """Every indecomposable projective and injective module is uniserial.

    Injective indecomposables are duals of right PIMs ``e A``, so both
    checks reduce to radical layers ``rad^k e`` / ``e rad^k`` inside ``A``.
    """
    check_split(a)
    return _layers_uniserial(a, right=False) and _layers_uniserial(a, right=True)


def _radical_series(m: AModule) -> list[np.ndarray]:
    """``[m, rad m, rad^2 m, …, 0]`` as column bases in ``m``."""
    rad = radical_algebra(m.algebra)
    series = [el.identity(m.dim)]
    while series[-1].shape[1]:
        cur = series[-1]
        if rad.shape[1] == 0:
            series.append(np.zeros((m.dim, 0), dtype=np.int64))
            continue
        mats = np.mod(np.tensordot(rad.T, m.action, axes=1), m.p)
        series.append(el.column_space(np.hstack([np.mod(x @ cur, m.p) for x in mats]), m.p))
    return series


def indecomposables_nakayama(a: FinDimAlgebra) -> list[AModule]:
    """All indecomposables ``P_t / rad^j P_t`` of a Nakayama algebra, by type then length."""
    if not is_nakayama(a):
        raise ValueError(f"{a.name or 'algebra'} is not a Nakayama algebra")
    st = structure(a)
    out = []
    for t in range(st.n_types):
        pim = st.type_pim(t)
        series = _radical_series(pim)
        for j in range(1, len(series)):
            q, _ = quotient_module(pim, series[j], name=f"P{t + 1}/rad^{j}")
            out.append(q)
    return out


def fdim(a: FinDimAlgebra, cutoff: int = DEFAULT_CUTOFF, mode: str = "exact-nakayama", catalog: Sequence[AModule] | None = None) -> DimensionReport:
    """Finitistic dimension.

    ``mode="exact-nakayama"`` takes the supremum over the complete list of
    indecomposables of a Nakayama algebra.  ``mode="catalog"`` uses the
    given modules and returns the value as a lower bound (``at_least``).
    Modules whose ``pd`` is only bounded below make the result a lower
    bound as well.
    """
    if mode == "exact-nakayama":
        mods = indecomposables_nakayama(a)
    elif mode == "catalog":
        if catalog is None:
            raise ValueError("catalog mode needs a module list")
        mods = list(catalog)
    else:
        raise ValueError(f"unknown fdim mode {mode!r}")
    best = 0
    unsure = False
    for m in mods:
        r = pd(m, cutoff)
        if r.is_exact:
            best = max(best, r.value)
        elif r.kind == "at_least":
            unsure = True
    if mode == "catalog":
        return DimensionReport.at_least(best)
    return DimensionReport.at_least(best) if unsure else DimensionReport.exact(best)


# ---------------------------------------------------------------------------
# Krull-Schmidt: decomposition and isomorphism


def is_indecomposable(m: AModule) -> bool:
    if m.dim == 0:
        return False
    end, _ = endomorphism_algebra(m)
    return is_local(end)


def _decompose(m: AModule, seed: int = 0) -> list[tuple[AModule, np.ndarray, np.ndarray]]:
    """``(summand, inclusion, projection)`` triples of an indecomposable decomposition."""
    p, d = m.p, m.dim
    if d == 0:
        return []
    end, basis = endomorphism_algebra(m)
    if is_local(end):
        return [(m, el.identity(d), el.identity(d))]
    idem = lift_primitive_idempotents(end, seed)
    out = []
    for eps in idem:
        mat = np.mod(np.tensordot(eps, basis, axes=1), p)
        cols = el.column_space(mat, p)
        summand, incl = submodule(m, cols)
        proj = el.matmul(el.left_inverse(cols, p), mat, p=p)
        out.append((summand, incl, proj))
    return out


def decompose_module(m: AModule, seed: int = 0) -> list[AModule]:
    """Indecomposable direct summands of ``m`` via primitive idempotents of ``End(m)``."""
    return [s for s, _, _ in _decompose(m, seed)]


def _indecomposable_iso(x: AModule, y: AModule) -> np.ndarray | None:
    """Iso ``x → y`` between indecomposables, or ``None`` (certified).

    ``x ≅ y`` iff some composite ``g f`` with ``f: x → y``, ``g: y → x``
    is invertible; since ``End(x)`` is local it suffices to test basis pairs.
    """
    if x.dim != y.dim:
        return None
    p = x.p
    fs = hom_space(x, y)
    gs = hom_space(y, x)
    for f in fs:
        if el.rank(f, p) == x.dim:
            return f
    for f in fs:
        for g in gs:
            if el.rank(el.matmul(g, f, p=p), p) == x.dim:
                return f
    return None


def module_iso(m: AModule, n: AModule) -> ModuleMap | None:
    """An isomorphism ``m → n``, or ``None`` when the modules are not isomorphic.

    Both outcomes are certified: the modules are split into indecomposables
    and matched summand by summand (Krull-Schmidt).
    """
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return ModuleMap(m, n, np.zeros((0, 0), dtype=np.int64))
    p = m.p
    hmm, hmn, hnm, hnn = (hom_space(a, b).shape[0] for a, b in ((m, m), (m, n), (n, m), (n, n)))
    if not (hmm == hmn == hnm == hnn):
        return None
    dm, dn = _decompose(m), _decompose(n)
    if len(dm) != len(dn):
        return None
    used = [False] * len(dn)
    total = np.zeros((n.dim, m.dim), dtype=np.int64)
    for xs, xi, xp in dm:
        for k, (ys, yi, yp) in enumerate(dn):
            if used[k]:
                continue
            f = _indecomposable_iso(xs, ys)
            if f is not None:
                used[k] = True
                total = np.mod(total + yi @ f @ xp, p)
                break
        else:
            return None
    return ModuleMap(m, n, total)


# ---------------------------------------------------------------------------
# Skew-algebra specific modules


def natural_module(skew: SkewGroupAlgebra) -> AModule:
    """``Λ`` as a ``ΛS``-module: ``(λ ⊗ g) · μ = λ g(μ)``."""
    base, act = skew.base, skew.action
    blocks = []
    for g in skew.elements:
        blocks.append(np.mod(np.einsum("ist,tu->isu", base.left_regular, act.mats[g]), base.p))
    return AModule(skew, np.concatenate(blocks, axis=0), name="Λ natural")


def fixed_points(m: AModule, fixed: FinDimAlgebra) -> tuple[AModule, np.ndarray]:
    """``M^S`` as a module over the fixed algebra, with its inclusion into ``M``.

    ``m`` lives over a skew algebra ``ΛS``; ``fixed`` is ``Λ^S`` as a
    subalgebra of ``Λ``.
    """
    skew = m.algebra
    if not isinstance(skew, SkewGroupAlgebra):
        raise TypeError("fixed points need a module over a skew group algebra")
    p, d = m.p, m.dim
    rows = [np.mod(m.act(skew.group_element(g)) - el.identity(d), p) for g in skew.elements]
    vecs = el.kernel_basis(np.vstack(rows), p).T if d else np.zeros((0, 0), dtype=np.int64)
    emb = np.mod(skew.base_embedding @ fixed.embedding, p)
    over_fixed = restrict_to_subalgebra(m, fixed, emb)
    sub, incl = submodule(over_fixed, vecs, name=f"{m.name}^S")
    return sub, incl


def restrict_scalars_projectivity(m: AModule) -> tuple[bool, bool]:
    """``(projective over ΛS, projective over Λ)``, computed independently."""
    skew = m.algebra
    if not isinstance(skew, SkewGroupAlgebra):
        raise TypeError("need a module over a skew group algebra")
    if m.dim == 0:
        return True, True
    over_base = restrict_to_subalgebra(m, skew.base, skew.base_embedding)
    return is_projective(m), is_projective(over_base)


def random_module(a: FinDimAlgebra, rng: np.random.Generator, max_summands: int = 2) -> AModule:
    """A random module: a submodule or quotient of a random PIM sum."""
    st = structure(a)
    k = int(rng.integers(1, max_summands + 1))
    types = sorted(int(t) for t in rng.integers(0, st.n_types, k))
    free = pim_sum(a, types)
    v = rng.integers(0, a.p, free.dim)
    span = el.column_space(np.mod(free.action @ v, a.p).T, a.p)
    choice = int(rng.integers(0, 3))
    if choice == 0 and span.shape[1]:
        sub, _ = submodule(free, span, name="random sub")
        return sub
    if choice == 1 and span.shape[1] < free.dim:
        q, _ = quotient_module(free, span, name="random quotient")
        return q
    return free
