"""Induction, restriction and the split maps between them.

Induced modules are stored in coset normal form: the basis of
``ΛG ⊗_{ΛH} V`` is ``g_i ⊗ v_k`` at index ``i * dim V + k`` for the left
coset representatives ``g_1 = 1, g_2, …``.  A generic tensor product over a
subalgebra (a quotient by balancing relations) gives an independent route
to the same modules and is also how ``Λ ⊗_{Λ^S} M`` is realised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algebra import FinDimAlgebra, SkewGroupAlgebra, SplittingData
from .homology import DimensionReport, pd
from .modules import AModule, ModuleMap, quotient_module, restrict_to_subalgebra

__all__ = [
    "IndexNotInvertible",
    "CosetSystem",
    "coset_system",
    "induce",
    "induce_map",
    "restrict",
    "TensorModule",
    "tensor_over_subalgebra",
    "tensor_map",
    "SplitPair",
    "unit_split",
    "average_split",
    "subalgebra_split",
    "PdComparison",
    "pd_compare",
]


class IndexNotInvertible(ArithmeticError):
    """``|G:H|`` is zero in the ground field, so averaging is impossible."""


@dataclass(frozen=True)
class CosetSystem:
    subgroup: tuple[int, ...]
    reps: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.reps)


def _check_pair(big: SkewGroupAlgebra, small: SkewGroupAlgebra) -> None:
    if small.base is not big.base or small.action is not big.action:
        raise ValueError("subgroup mismatch: the skew algebras use different base algebras or actions")
    if not set(small.elements) <= set(big.elements):
        raise ValueError("subgroup mismatch: H is not contained in G")


def coset_system(big: SkewGroupAlgebra, small: SkewGroupAlgebra) -> CosetSystem:
    """Left coset representatives of ``H`` in ``G``: identity first, then lowest index."""
    _check_pair(big, small)
    G = big.action.group
    seen: set[frozenset] = set()
    reps = []
    for g in sorted(big.elements, key=lambda x: (x != G.identity, x)):
        coset = frozenset(G.mul(g, h) for h in small.elements)
        if coset not in seen:
            seen.add(coset)
            reps.append(g)
    return CosetSystem(small.elements, tuple(reps))


def _decompose_element(G, reps, small_elems, g: int) -> tuple[int, int]:
    """``(j, h)`` with ``g = g_j h``."""
    for j, r in enumerate(reps):
        h = G.mul(G.inverse(r), g)
        if h in small_elems:
            return j, h
    raise ValueError(f"element {g} lies in no listed coset")


def induce(v: AModule, big: SkewGroupAlgebra) -> AModule:
    """``V↑ = ΛG ⊗_{ΛH} V`` with the action rewritten into coset normal form.

    ``(λ ⊗ g)(g_i ⊗ v) = g_j ⊗ (g_j^{-1}(λ) ⊗ h) v`` where ``g g_i = g_j h``.
    """
    small = v.algebra
    if not isinstance(small, SkewGroupAlgebra):
        raise TypeError("induction needs a module over a skew group algebra")
    cs = coset_system(big, small)
    G, act, base = big.action.group, big.action, big.base
    n, d, t, p = base.dim, v.dim, cs.index, v.p
    out = np.zeros((big.dim, t * d, t * d), dtype=np.int64)
    for g in big.elements:
        for i, gi in enumerate(cs.reps):
            j, h = _decompose_element(G, cs.reps, small.elements, G.mul(g, gi))
            twist = act.mats[G.inverse(cs.reps[j])]  # columns: g_j^{-1}(b_l)
            hk = small.elements.index(h) * n
            # matrices of g_j^{-1}(b_l) ⊗ h on V for every l at once
            blocks = np.mod(np.tensordot(twist.T, v.action[hk : hk + n], axes=1), p)
            out[big.index(0, g) : big.index(0, g) + n, j * d : (j + 1) * d, i * d : (i + 1) * d] = blocks
    return AModule(big, out, name=f"{v.name}↑" if v.name else "")


def induce_map(f: np.ndarray, index: int, p: int) -> np.ndarray:
    """``ΛG ⊗_{ΛH} f`` in coset normal form: one copy of ``f`` per coset."""
    return np.mod(np.kron(el.identity(index), np.asarray(f, dtype=np.int64)), p)


def restrict(m: AModule, small: SkewGroupAlgebra) -> AModule:
    """``M↓``: the same space viewed over ``ΛH``."""
    big = m.algebra
    if not isinstance(big, SkewGroupAlgebra):
        raise TypeError("restriction needs a module over a skew group algebra")
    _check_pair(big, small)
    return restrict_to_subalgebra(m, small, big.sub_embedding(small))


# ---------------------------------------------------------------------------
# Tensor over a subalgebra


@dataclass(frozen=True, eq=False)
class TensorModule:
    """``A ⊗_B M`` as a quotient of ``A ⊗_k M``.

    ``projection`` maps the free space (index ``x * dim M + k``) onto the
    quotient and ``section`` lifts the quotient basis back.
    """

    module: AModule
    projection: np.ndarray
    section: np.ndarray
    source: AModule
    embedding: np.ndarray

    def unit_map(self) -> np.ndarray:
        """``v ↦ 1 ⊗ v``."""
        a = self.module.algebra
        d = self.source.dim
        free = np.kron(a.unit.reshape(-1, 1), el.identity(d))
        return el.matmul(self.projection, free, p=a.p)


def tensor_over_subalgebra(a: FinDimAlgebra, embedding: np.ndarray, m: AModule) -> TensorModule:
    """``a ⊗_B m`` where ``B = m.algebra`` sits in ``a`` via ``embedding`` columns.

    The balancing relations ``x b ⊗ v - x ⊗ b v`` are imposed for ``x`` in a
    basis of ``a`` and ``b`` in a generating set of ``B``.
    """
    p, n, d = a.p, a.dim, m.dim
    sub = m.algebra
    emb = np.mod(np.asarray(embedding, dtype=np.int64), p)
    gens = sub.generators
    rows = []
    for x in range(n):
        for g in gens:
            xb = a.mul(a.basis_vector(x), emb[:, g])  # coordinates of x·b
            left = np.kron(xb.reshape(-1, 1), el.identity(d))  # (x b) ⊗ v_k
            right = np.zeros((n * d, d), dtype=np.int64)
            right[x * d : (x + 1) * d] = m.action[g]
            rows.append(np.mod(left - right, p).T)
    free = AModule(a, _kron_action(a, d))
    rel = el.column_space(np.vstack(rows).T, p) if rows else np.zeros((n * d, 0), dtype=np.int64)
    q, proj = quotient_module(free, rel, name=f"{a.name or 'A'}⊗{m.name}")
    section = el.complement_columns(rel, n * d, p)
    return TensorModule(q, proj, section, m, emb)


def _kron_action(a: FinDimAlgebra, d: int) -> np.ndarray:
    """Left action of ``a`` on ``a ⊗_k k^d`` (index ``x * d + k``)."""
    return np.mod(np.stack([np.kron(a.left_regular[i], el.identity(d)) for i in range(a.dim)]), a.p)


def tensor_map(t_src: TensorModule, t_tgt: TensorModule, f: np.ndarray) -> np.ndarray:
    """``1 ⊗ f`` between two tensor modules over the same algebras."""
    p, n = t_src.module.p, t_src.module.algebra.dim
    free = np.kron(el.identity(n), np.asarray(f, dtype=np.int64))
    return el.matmul(t_tgt.projection, free, t_src.section, p=p)


# ---------------------------------------------------------------------------
# Split pairs


@dataclass(frozen=True, eq=False)
class SplitPair:
    """``backward ∘ forward`` should be the identity of the original object."""

    forward: ModuleMap
    backward: ModuleMap

    def composite(self) -> np.ndarray:
        return self.backward.compose(self.forward).matrix

    def is_split(self) -> bool:
        return bool(np.array_equal(self.composite(), el.identity(self.forward.source.dim)))


def unit_split(v: AModule, big: SkewGroupAlgebra) -> tuple[AModule, SplitPair]:
    """``(V↑↓, (ι, δ))`` with ``ι(v) = 1 ⊗ v`` and ``δ`` projecting onto the trivial coset."""
    small = v.algebra
    up = induce(v, big)
    round_trip = restrict(up, small)
    d = v.dim
    iota = np.zeros((round_trip.dim, d), dtype=np.int64)
    iota[:d] = el.identity(d)
    delta = iota.T.copy()
    return round_trip, SplitPair(ModuleMap(v, round_trip, iota), ModuleMap(round_trip, v, delta))


def average_split(m: AModule, small: SkewGroupAlgebra) -> tuple[AModule, SplitPair]:
    """``(M↓↑, (θ, ρ))`` with ``θ(v) = |G:H|^{-1} Σ g_i ⊗ g_i^{-1} v`` and ``ρ(g ⊗ v) = g v``."""
    big = m.algebra
    cs = coset_system(big, small)
    p, d, t = m.p, m.dim, cs.index
    if t % p == 0:
        raise IndexNotInvertible(f"|G:H| = {t} is zero modulo {p}")
    inv_t = pow(t, -1, p)
    G = big.action.group
    round_trip = induce(restrict(m, small), big)
    theta = np.zeros((t * d, d), dtype=np.int64)
    rho = np.zeros((d, t * d), dtype=np.int64)
    for i, gi in enumerate(cs.reps):
        theta[i * d : (i + 1) * d] = inv_t * m.act(big.group_element(G.inverse(gi)))
        rho[:, i * d : (i + 1) * d] = m.act(big.group_element(gi))
    return round_trip, SplitPair(ModuleMap(m, round_trip, theta), ModuleMap(round_trip, m, rho))


def subalgebra_split(m: AModule, base: FinDimAlgebra, splitting: SplittingData | None) -> tuple[AModule, TensorModule, SplitPair]:
    """``((Λ ⊗_{Λ^S} M)↓, tensor data, (ψ, φ))`` with ``ψ(v) = 1 ⊗ v`` and ``φ(λ ⊗ v) = ζ(λ) v``.

    ``m`` is a module over the fixed algebra (whose ``embedding`` places it
    inside ``base``).
    """
    if splitting is None:
        raise ValueError("no bimodule splitting ζ available")
    fixed = m.algebra
    p, n, d = m.p, base.dim, m.dim
    t = tensor_over_subalgebra(base, fixed.embedding, m)
    down = restrict_to_subalgebra(t.module, fixed, fixed.embedding)
    psi = t.unit_map()
    # φ on the free space, then descended through the section
    phi_free = np.zeros((d, n * d), dtype=np.int64)
    for x in range(n):
        phi_free[:, x * d : (x + 1) * d] = m.act(splitting.zeta[:, x])
    rel_image = el.matmul(phi_free, _relations_in_free(t), p=p)
    if np.any(rel_image):
        raise ValueError("φ does not vanish on the balancing relations; ζ is not a bimodule map")
    phi = el.matmul(phi_free, t.section, p=p)
    return down, t, SplitPair(ModuleMap(m, down, psi), ModuleMap(down, m, phi))


def _relations_in_free(t: TensorModule) -> np.ndarray:
    """Column basis of the kernel of the projection (the balancing relations)."""
    return el.kernel_basis(t.projection, t.module.p).T


# ---------------------------------------------------------------------------
# Projective dimension comparison


@dataclass(frozen=True)
class PdComparison:
    pd_down: DimensionReport
    pd_up: DimensionReport
    relation: str  # "<=" or "="
    status: str  # "pass", "fail" or "inconclusive"

    def to_dict(self) -> dict:
        return {"pd_down": self.pd_down.to_dict(), "pd_up": self.pd_up.to_dict(), "relation": self.relation, "status": self.status}


def _le(a: DimensionReport, b: DimensionReport) -> bool | None:
    if a.is_exact and b.is_exact:
        return a.value <= b.value
    if b.is_infinite:
        return True
    if a.is_infinite and b.is_exact:
        return False
    return None


def pd_compare(m: AModule, small: SkewGroupAlgebra, cutoff: int = 10) -> PdComparison:
    """``pd_{ΛH}(M↓) ≤ pd_{ΛG}(M)``, with equality expected when ``|G:H|`` is invertible."""
    big = m.algebra
    t = coset_system(big, small).index
    down, up = pd(restrict(m, small), cutoff), pd(m, cutoff)
    relation = "=" if t % m.p else "<="
    le = _le(down, up)
    if relation == "=":
        ge = _le(up, down)
        if le is None or ge is None:
            status = "inconclusive"
        else:
            status = "pass" if (le and ge and down.kind == up.kind) else "fail"
    else:
        status = "inconclusive" if le is None else ("pass" if le else "fail")
    return PdComparison(down, up, relation, status)
