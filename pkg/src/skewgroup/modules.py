"""Finite-dimensional left modules given by action matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactlin as el
from .algebra import FinDimAlgebra

__all__ = [
    "AModule",
    "ModuleMap",
    "verify_module",
    "regular_module",
    "zero_module",
    "direct_sum",
    "submodule",
    "quotient_module",
    "restrict_to_subalgebra",
    "hom_space",
    "is_module_map",
    "endomorphism_algebra",
    "cyclic_submodule",
    "kernel_submodule",
]


@dataclass(frozen=True, eq=False)
class AModule:
    """Left module: ``action[i]`` is the matrix by which basis element ``b_i`` acts."""

    algebra: FinDimAlgebra
    action: np.ndarray
    name: str = ""

    def __post_init__(self):
        a = np.mod(np.asarray(self.action, dtype=np.int64), self.algebra.p)
        n = self.algebra.dim
        if a.ndim != 3 or a.shape[0] != n or a.shape[1] != a.shape[2]:
            raise ValueError(f"action must have shape ({n}, d, d), got {a.shape}")
        object.__setattr__(self, "action", a)

    def __repr__(self) -> str:
        return f"AModule({self.name or '?'}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    def act(self, x) -> np.ndarray:
        """Matrix of the algebra element with coordinates ``x``."""
        return np.mod(np.tensordot(x, self.action, axes=1), self.p)

    @cached_property
    def generator_action(self) -> np.ndarray:
        return self.action[list(self.algebra.generators)]


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: AModule
    target: AModule
    matrix: np.ndarray

    def __post_init__(self):
        m = np.mod(np.asarray(self.matrix, dtype=np.int64), self.source.p).reshape(self.target.dim, self.source.dim)
        object.__setattr__(self, "matrix", m)

    def is_valid(self) -> bool:
        return is_module_map(self.matrix, self.source, self.target)

    def compose(self, other: ModuleMap) -> ModuleMap:
        """``self ∘ other``."""
        return ModuleMap(other.source, self.target, el.matmul(self.matrix, other.matrix, p=self.source.p))


def verify_module(m: AModule) -> list[str]:
    """Violations of the module axioms (empty list when ``m`` is a module)."""
    a, p = m.algebra, m.p
    bad = []
    if not np.array_equal(m.act(a.unit), el.identity(m.dim)):
        bad.append("unit does not act as the identity")
    lhs = np.mod(np.einsum("ist,jtu->ijsu", m.action, m.action), p)
    rhs = np.mod(np.einsum("ijk,kst->ijst", a.constants, m.action), p)
    for i, j in zip(*np.nonzero(np.any(lhs != rhs, axis=(2, 3)))):
        bad.append(f"b{i} (b{j} v) != (b{i} b{j}) v")
    return bad


def regular_module(a: FinDimAlgebra) -> AModule:
    return AModule(a, a.left_regular, name=f"{a.name or 'A'} regular")


def zero_module(a: FinDimAlgebra) -> AModule:
    return AModule(a, np.zeros((a.dim, 0, 0), dtype=np.int64), name="0")


def direct_sum(*ms: AModule, name: str = "") -> AModule:
    if not ms:
        raise ValueError("direct sum of nothing; use zero_module")
    a = ms[0].algebra
    d = sum(m.dim for m in ms)
    act = np.zeros((a.dim, d, d), dtype=np.int64)
    off = 0
    for m in ms:
        if m.algebra is not a:
            raise ValueError("summands live over different algebras")
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    return AModule(a, act, name=name or " ⊕ ".join(m.name or "?" for m in ms))


def submodule(m: AModule, cols: np.ndarray, name: str = "") -> tuple[AModule, np.ndarray]:
    """Submodule spanned by the (independent) columns of ``cols``; returns it with its inclusion."""
    p = m.p
    if m.dim == 0:
        return zero_module(m.algebra), np.zeros((0, 0), dtype=np.int64)
    cols = np.mod(np.asarray(cols, dtype=np.int64).reshape(m.dim, -1), p)
    k = cols.shape[1]
    if k == 0:
        return zero_module(m.algebra), cols
    images = np.mod(np.einsum("ist,tk->isk", m.action, cols), p)
    linv = el.left_inverse(cols, p)
    sub = np.mod(np.einsum("js,isk->ijk", linv, images), p)
    if not np.array_equal(np.mod(np.einsum("sj,ijk->isk", cols, sub), p), images):
        raise ValueError("subspace is not a submodule")
    return AModule(m.algebra, sub, name=name), cols


def quotient_module(m: AModule, cols: np.ndarray, name: str = "") -> tuple[AModule, np.ndarray]:
    """``m / span(cols)`` for a submodule basis ``cols``; returns it with the projection."""
    p, d = m.p, m.dim
    cols = np.asarray(cols, dtype=np.int64).reshape(d, -1)
    comp = el.complement_columns(cols, d, p)
    full = np.hstack([comp, cols])
    inv = el.inverse(full, p)
    k = comp.shape[1]
    proj = inv[:k]
    act = np.mod(np.einsum("js,ist,tk->ijk", proj, m.action, comp), p)
    q = AModule(m.algebra, act, name=name)
    # the submodule must be killed by proj after acting
    if cols.shape[1] and np.any(np.mod(np.einsum("js,ist,tk->ijk", proj, m.action, cols), p)):
        raise ValueError("subspace is not a submodule")
    return q, proj


def restrict_to_subalgebra(m: AModule, sub: FinDimAlgebra, embedding: np.ndarray | None = None) -> AModule:
    """View ``m`` as a module over a subalgebra (``embedding`` columns in ``m.algebra`` coordinates)."""
    emb = sub.embedding if embedding is None else embedding
    act = np.mod(np.tensordot(np.asarray(emb).T, m.action, axes=1), m.p)
    return AModule(sub, act, name=f"{m.name}↓" if m.name else "")


def hom_space(m: AModule, n: AModule) -> np.ndarray:
    """Basis of ``Hom_A(m, n)`` as an array of shape ``(k, dim n, dim m)``."""
    p = m.p
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return np.zeros((0, dn, dm), dtype=np.int64)
    rows = []
    for am, an in zip(m.generator_action, n.generator_action):
        # X am - an X = 0, X vectorised row-major
        rows.append(np.kron(el.identity(dn), am.T) - np.kron(an, el.identity(dm)))
    if not rows:
        return el.identity(dn * dm).reshape(-1, dn, dm)
    ker = el.kernel_basis(np.mod(np.vstack(rows), p), p)
    return ker.reshape(-1, dn, dm)


def is_module_map(f, m: AModule, n: AModule) -> bool:
    f = np.mod(np.asarray(f, dtype=np.int64), m.p)
    if f.shape != (n.dim, m.dim):
        return False
    lhs = np.mod(np.einsum("st,itu->isu", f, m.action), m.p)
    rhs = np.mod(np.einsum("ist,tu->isu", n.action, f), m.p)
    return bool(np.array_equal(lhs, rhs))


def endomorphism_algebra(m: AModule) -> tuple[FinDimAlgebra, np.ndarray]:
    """``End_A(m)`` under composition, with its basis matrices ``(k, d, d)``."""
    p, d = m.p, m.dim
    basis = hom_space(m, m)
    k = basis.shape[0]
    flat = basis.reshape(k, d * d).T
    prods = np.mod(np.einsum("ist,jtu->ijsu", basis, basis), p).reshape(k * k, d * d).T
    coords = el.solve(flat, prods, p)
    constants = np.transpose(coords.reshape(k, k, k), (1, 2, 0))
    unit = el.solve(flat, el.identity(d).reshape(-1), p)
    return FinDimAlgebra(p, constants, unit, name=f"End({m.name})"), basis


def cyclic_submodule(m: AModule, v) -> np.ndarray:
    """Column basis of ``A v``."""
    v = np.mod(np.asarray(v, dtype=np.int64), m.p)
    return el.column_space(np.mod(m.action @ v, m.p).T, m.p)


def kernel_submodule(f: np.ndarray, m: AModule) -> tuple[AModule, np.ndarray]:
    ker = el.kernel_basis(f, m.p).T
    return submodule(m, ker)
