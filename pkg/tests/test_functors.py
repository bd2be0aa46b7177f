import numpy as np
import pytest
from conftest import FIXTURES, FREE

from skewgroup import exactlin as el
from skewgroup.functors import (
    IndexNotInvertible,
    _le,
    average_split,
    coset_system,
    induce,
    pd_compare,
    restrict,
    subalgebra_split,
    tensor_map,
    tensor_over_subalgebra,
    unit_split,
)
from skewgroup.homology import DimensionReport, module_iso, random_module, simples
from skewgroup.modules import is_module_map, verify_module


def test_coset_system(contexts):
    ctx = contexts("EX-A")
    cs = coset_system(ctx.skew_G, ctx.skew_1)
    assert cs.reps == (0, 1) and cs.index == 2
    assert coset_system(ctx.skew_G, ctx.skew_S).reps == (0,)


def test_mismatched_algebras_rejected(contexts):
    a, b = contexts("EX-A"), contexts("EX-B")
    with pytest.raises(ValueError, match="subgroup mismatch"):
        coset_system(a.skew_G, b.skew_1)
    with pytest.raises(TypeError):
        induce(simples(a.lam)[0], a.skew_G)


def test_induced_simple_by_hand(contexts):
    # From the trivial subgroup: basis 1⊗v, σ⊗v of S1↑ where e1 v = v, e2 v = 0.
    # e1·(σ⊗v) = σ⊗σ(e1)v = σ⊗e2 v = 0, so e1 acts as diag(1, 0), e2 as diag(0, 1)
    # and σ swaps the two basis vectors.
    ctx = contexts("EX-A")
    one, G = ctx.skew_1, ctx.skew_G
    s1 = next(s for s in simples(one) if s.act(one.tensor([1, 0], 0))[0, 0] == 1)
    up = induce(s1, G)
    assert up.dim == 2 and verify_module(up) == []
    assert np.array_equal(up.act(G.tensor([1, 0], 0)), [[1, 0], [0, 0]])
    assert np.array_equal(up.act(G.tensor([0, 1], 0)), [[0, 0], [0, 1]])
    assert np.array_equal(up.act(G.group_element(1)), [[0, 1], [1, 0]])


@pytest.mark.parametrize("name", FIXTURES)
def test_induce_agrees_with_tensor_product(contexts, name, rng):
    ctx = contexts(name)
    G = ctx.skew_G
    for H in (ctx.skew_1, ctx.skew_S):
        for v in simples(H) + [random_module(H, rng) for _ in range(3)]:
            up = induce(v, G)
            t = tensor_over_subalgebra(G, G.sub_embedding(H), v)
            assert up.dim == coset_system(G, H).index * v.dim == t.module.dim
            assert verify_module(up) == []
            assert module_iso(up, t.module) is not None


def test_restrict_keeps_dimension(contexts, rng):
    ctx = contexts("EX-D")
    for m in ctx.modules("skew_G") + [random_module(ctx.skew_G, rng) for _ in range(5)]:
        down = restrict(m, ctx.skew_1)
        assert down.dim == m.dim and verify_module(down) == []


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("seed", [0, 1])
def test_unit_split(contexts, name, seed):
    ctx = contexts(name)
    rng = np.random.default_rng(seed)
    for H in (ctx.skew_1, ctx.skew_S):
        for _ in range(5):
            v = random_module(H, rng)
            rt, sp = unit_split(v, ctx.skew_G)
            assert is_module_map(sp.forward.matrix, v, rt)
            assert is_module_map(sp.backward.matrix, rt, v)
            assert sp.is_split()


def test_average_split_invertible_index(contexts, rng):
    ctx = contexts("EX-D")
    for m in ctx.modules("skew_G") + [random_module(ctx.skew_G, rng) for _ in range(5)]:
        rt, sp = average_split(m, ctx.skew_1)
        assert is_module_map(sp.forward.matrix, m, rt)
        assert is_module_map(sp.backward.matrix, rt, m)
        assert sp.is_split()


def test_average_split_needs_invertible_index(contexts):
    ctx = contexts("EX-C")
    with pytest.raises(IndexNotInvertible):
        average_split(simples(ctx.skew_G)[0], ctx.skew_1)


@pytest.mark.parametrize("name", FREE)
def test_subalgebra_split(contexts, name, rng):
    ctx = contexts(name)
    fx = ctx.fixed_S
    for m in simples(fx) + [random_module(fx, rng) for _ in range(4)]:
        down, t, sp = subalgebra_split(m, ctx.lam, ctx.splitting)
        assert verify_module(t.module) == [] and verify_module(down) == []
        assert is_module_map(sp.forward.matrix, m, down)
        assert is_module_map(sp.backward.matrix, down, m)
        assert sp.is_split()


def test_subalgebra_split_needs_zeta(contexts):
    ctx = contexts("EX-A")
    with pytest.raises(ValueError):
        subalgebra_split(simples(ctx.fixed_S)[0], ctx.lam, None)


def test_tensor_map_identity(contexts):
    ctx = contexts("EX-B")
    for m in simples(ctx.fixed_S):
        t = tensor_over_subalgebra(ctx.lam, ctx.fixed_S.embedding, m)
        assert np.array_equal(tensor_map(t, t, el.identity(m.dim)), el.identity(t.module.dim))


def test_pd_compare_modular_strict(contexts):
    # Λ = k with trivial Z/2-action at p = 2: ΛG = kZ/2, the trivial module is not projective
    ctx = contexts("EX-C")
    (k,) = simples(ctx.skew_G)
    c = pd_compare(k, ctx.skew_1)
    assert c.relation == "<="
    assert c.pd_down == DimensionReport.exact(0)
    assert c.pd_up == DimensionReport.infinite(0, 1)
    assert c.status == "pass"


def test_pd_compare_equality_invertible_index(contexts):
    ctx = contexts("EX-D")
    comps = [pd_compare(m, ctx.skew_1) for m in ctx.modules("skew_G")]
    assert comps and all(c.relation == "=" and c.status == "pass" for c in comps)
    # infinite reports may carry different periods on the two sides
    assert all(c.pd_down.kind == c.pd_up.kind and c.pd_down.value == c.pd_up.value for c in comps)


def test_pd_order():
    assert _le(DimensionReport.exact(2), DimensionReport.exact(1)) is False
    assert _le(DimensionReport.infinite(0, 1), DimensionReport.exact(3)) is False
    assert _le(DimensionReport.at_least(2), DimensionReport.exact(3)) is None
