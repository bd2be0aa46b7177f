import itertools

import numpy as np
import pytest

from skewgroup import exactlin as el
from skewgroup.algebra import (
    FiniteGroup,
    GroupAction,
    QuiverPresentation,
    algebra_from_quiver,
    algebra_from_table,
    bimodule_splitting,
    check_action_on_idempotents,
    find_sylow,
    fixed_algebra,
    matrix_algebra,
    product_algebra,
    quiver_automorphism,
    skew_group_algebra,
    splitting_violations,
    verify_algebra,
    verify_sylow,
)
from skewgroup.radical import radical_algebra

from conftest import FIXTURES


def kA2(p=2):
    return algebra_from_quiver(QuiverPresentation((1, 2), (("a", 1, 2),), (), 2), p)


def test_path_algebra_basis_and_products():
    a = kA2()
    assert a.labels == ("e1", "e2", "a")
    e1, e2, x = (a.basis_vector(i) for i in range(3))
    assert np.array_equal(a.mul(e1, e1), e1)
    assert not np.any(a.mul(e1, e2))
    # paths compose in traversal order: a starts at 1, so a = a e1 = e2 a
    assert np.array_equal(a.mul(x, e1), x)
    assert np.array_equal(a.mul(e2, x), x)
    assert not np.any(a.mul(e1, x))
    assert np.array_equal(a.unit, [1, 1, 0])


def test_tampered_table_is_reported():
    a = kA2()
    c = a.constants.copy()
    c[0, 2] = [0, 0, 1]  # e1 · a = a, the true value is 0
    bad = verify_algebra(algebra_from_table(2, c, a.unit))
    assert bad


def test_paths_beyond_the_nilpotency_bound_vanish():
    q = QuiverPresentation((1,), (("x", 1, 1),), (), 3)
    a = algebra_from_quiver(q, 5)
    assert a.dim == 3
    x = a.basis_vector(1)
    assert not np.any(a.mul(x, a.mul(x, x)))
    assert np.any(a.mul(x, x))


def test_relation_violating_automorphism_is_rejected():
    q = QuiverPresentation((1,), (("x", 1, 1), ("y", 1, 1)), ([(1, ("x", "x"))],), 3)
    a = algebra_from_quiver(q, 2)
    with pytest.raises(ValueError):
        quiver_automorphism(a, {}, {"x": (1, "y"), "y": (1, "x")})


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_algebras_are_associative(contexts, name):
    ctx = contexts(name)
    for alg in (ctx.lam, ctx.skew_G, ctx.skew_S, ctx.fixed_S):
        assert verify_algebra(alg) == []


@pytest.mark.parametrize("name", FIXTURES)
def test_skew_product_matches_the_twisted_formula(contexts, name):
    ctx = contexts(name)
    a, act, G = ctx.lam, ctx.spec.action, ctx.skew_G
    group = ctx.spec.group
    rng = np.random.default_rng(7)
    for _ in range(10):
        lam, mu = rng.integers(0, a.p, a.dim), rng.integers(0, a.p, a.dim)
        g, h = (int(t) for t in rng.integers(0, group.order, 2))
        lhs = G.mul(G.tensor(lam, g), G.tensor(mu, h))
        rhs = G.tensor(a.mul(lam, act.apply(g, mu)), group.mul(g, h))
        assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("name", FIXTURES)
def test_skew_dimension(contexts, name):
    ctx = contexts(name)
    assert ctx.skew_G.dim == ctx.spec.group.order * ctx.lam.dim
    assert ctx.skew_S.dim == len(ctx.spec.sylow) * ctx.lam.dim


def brute_radical_dim(a):
    """Size of {x : yx nilpotent for every y}, by enumeration."""
    elems = [np.array(v) for v in itertools.product(range(a.p), repeat=a.dim)]
    n = a.dim
    count = 0
    for x in elems:
        ok = True
        for y in elems:
            m = a.left_matrix(a.mul(y, x))
            if np.any(np.linalg.matrix_power(m, n) % a.p):
                ok = False
                break
        count += ok
    return round(np.log(count) / np.log(a.p))


@pytest.mark.parametrize("name", FIXTURES)
def test_radical_against_enumeration(contexts, name):
    ctx = contexts(name)
    for alg in (ctx.lam, ctx.fixed_S):
        if alg.p ** alg.dim <= 256:
            assert radical_algebra(alg).shape[1] == brute_radical_dim(alg)


def test_radical_of_matrix_and_product_algebras():
    assert radical_algebra(matrix_algebra(2, 3)).shape[1] == 0
    a = product_algebra(kA2(), matrix_algebra(2, 2))
    assert radical_algebra(a).shape[1] == 1


def test_fixed_algebra_and_orbit_sums(contexts):
    ex_a = contexts("EX-A")
    fx = ex_a.fixed_S
    assert fx.dim == 1
    assert np.array_equal(fx.embedding[:, 0], [1, 1])
    assert fx.trace_spans
    ex_c = contexts("EX-C")
    # trivial action in characteristic 2: every orbit sum is 2μ = 0
    assert ex_c.fixed_S.dim == 1 and not ex_c.fixed_S.trace_spans


def test_idempotent_action_freeness(contexts):
    assert check_action_on_idempotents(contexts("EX-A").spec.action, contexts("EX-A").spec.idempotents, (0, 1)).free
    ia = contexts("EX-C").idempotent_action
    assert ia.closed and not ia.free


def test_sylow_subgroups():
    g = FiniteGroup.cyclic(6)
    assert verify_sylow(g, [0, 3], 2)
    assert verify_sylow(g, [0, 2, 4], 3)
    assert not verify_sylow(g, [0, 2, 4], 2)
    assert not verify_sylow(g, [0, 1], 2)
    assert sorted(find_sylow(g, 2)) == [0, 3]
    assert g.verify() == []


def test_group_action_from_generators_extends_multiplicatively():
    a = product_algebra(*[algebra_from_table(3, [[[1]]], [1])] * 3)
    g = FiniteGroup.cyclic(3)
    cyc = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    act = GroupAction.from_generators(a, g, {1: cyc})
    assert act.verify() == []
    assert np.array_equal(act.mats[2], el.matmul(cyc, cyc, p=3))


@pytest.mark.parametrize("name", ["EX-A", "EX-B", "EX-E"])
def test_bimodule_retraction(contexts, name):
    ctx = contexts(name)
    z = bimodule_splitting(ctx.lam, ctx.fixed_S)
    assert z is not None
    assert splitting_violations(ctx.lam, ctx.fixed_S, z.zeta) == []
    assert np.array_equal(el.matmul(z.projection, z.projection, p=ctx.lam.p), z.projection)
    assert ctx.lam.dim == ctx.fixed_S.dim + z.complement.shape[1]
    assert splitting_violations(ctx.lam, ctx.fixed_S, np.zeros_like(z.zeta))


def test_fixed_algebra_rejects_non_subgroups(contexts):
    ctx = contexts("EX-A")
    g = FiniteGroup.cyclic(4)
    a = ctx.lam
    act = GroupAction.from_generators(a, g, {1: np.array([[0, 1], [1, 0]])})
    with pytest.raises(ValueError):
        fixed_algebra(a, act, [0, 1])
    assert skew_group_algebra(a, act, [0, 2]).dim == 4
