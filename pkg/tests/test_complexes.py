import numpy as np
import pytest
from conftest import FREE

from skewgroup.algebra import QuiverPresentation, algebra_from_quiver, matrix_algebra
from skewgroup.complexes import (
    PerfectComplex,
    average_split_complex,
    direct_sum_complex,
    from_resolution,
    homotopy_end,
    is_indecomposable_complex,
    is_minimal,
    length,
    mapping_cone_identity,
    minimalize,
    piecewise_hereditary_verdict,
    restrict_complex,
    sgldim_search,
    stalk,
    subalgebra_complex_split,
    trim,
    unit_split_complex,
    verify_complex,
)
from skewgroup.homology import pd, pim_sum, simples, structure
from skewgroup.modules import hom_space


def quiver(vertices, arrows, bound, p=2):
    return algebra_from_quiver(QuiverPresentation(vertices, arrows, (), bound), p)


@pytest.fixture
def ka2():
    return quiver((1, 2), (("a", 1, 2),), 2)


@pytest.fixture
def dual():
    return quiver((1,), (("x", 1, 1),), 2)


def test_resolution_complex(ka2):
    for s in simples(ka2):
        c = from_resolution(s)
        assert verify_complex(c) == []
        assert c.end == 0 and length(c) == pd(s).value
        assert is_indecomposable_complex(c)


def test_resolution_needs_finite_pd(dual):
    with pytest.raises(ValueError):
        from_resolution(simples(dual)[0], cutoff=3)


def test_cone_of_identity_is_contractible():
    a = quiver((1, 2, 3), (("a", 1, 2), ("b", 2, 3)), 2, p=3)
    for s in simples(a):
        c = from_resolution(s)
        cone = mapping_cone_identity(c)
        assert verify_complex(cone, minimal=False) == []
        assert not is_minimal(cone)
        m, f, g = minimalize(cone)
        assert sum(m.dims()) == 0
        assert f.is_valid() and g.is_valid()
        assert homotopy_end(cone).dim == 0


def test_minimalize_strips_contractible_summand(ka2):
    c = from_resolution(max(simples(ka2), key=lambda s: pd(s).value))
    noisy = direct_sum_complex(c, mapping_cone_identity(stalk(pim_sum(ka2, [0]), 0, (0,))))
    assert not is_minimal(noisy)
    m, f, g = minimalize(noisy)
    assert verify_complex(m) == []
    assert m.dims() == trim(c).dims() and m.start == c.start
    assert f.is_valid() and g.is_valid()
    assert f.compose(g).is_identity()


def test_minimalize_of_minimal_is_identity(ka2):
    c = from_resolution(simples(ka2)[0])
    m, f, g = minimalize(c)
    assert m.dims() == c.dims()
    assert f.compose(g).is_identity()


def test_homotopy_end_of_stalk_is_module_end(ka2):
    st = structure(ka2)
    for t in range(st.n_types):
        pim = st.type_pim(t)
        assert homotopy_end(stalk(pim, 0, (t,))).dim == len(hom_space(pim, pim))


def test_homotopy_end_detects_decomposable(ka2):
    c = from_resolution(simples(ka2)[0])
    both = direct_sum_complex(c, c.shift(3))
    assert homotopy_end(both).dim == 2 * homotopy_end(c).dim
    assert not is_indecomposable_complex(both)


def test_complex_shape_checks(ka2):
    p1 = pim_sum(ka2, [0])
    with pytest.raises(ValueError):
        PerfectComplex(ka2, (p1, p1), ())
    s = max(simples(ka2), key=lambda s: pd(s).value)
    assert any("not projective" in v for v in verify_complex(PerfectComplex(ka2, (s,), ())))


def test_unit_split_complex(contexts):
    ctx = contexts("EX-B")
    for s in simples(ctx.skew_1):
        c = from_resolution(s)
        rt, sp = unit_split_complex(c, ctx.skew_G)
        assert verify_complex(rt, minimal=False) == []
        assert sp.forward.is_valid() and sp.backward.is_valid()
        assert sp.is_split()


def test_average_split_complex(contexts):
    ctx = contexts("EX-D")
    # stalks of the indecomposable projectives over ΛG
    for t in range(structure(ctx.skew_G).n_types):
        c = stalk(pim_sum(ctx.skew_G, [t]), 0, (t,))
        rt, sp = average_split_complex(c, ctx.skew_1)
        assert sp.forward.is_valid() and sp.backward.is_valid()
        assert sp.is_split()
    c = stalk(pim_sum(ctx.skew_G, [0]), 0, (0,))
    assert restrict_complex(c, ctx.skew_1).dims() == c.dims()


@pytest.mark.parametrize("name", FREE)
def test_subalgebra_complex_split(contexts, name):
    ctx = contexts(name)
    fx = ctx.fixed_S
    cs = [stalk(pim_sum(fx, [t]), 0, (t,)) for t in range(structure(fx).n_types)]
    cs += [from_resolution(s) for s in simples(fx) if pd(s).is_exact]
    for c in cs:
        up, down, sp = subalgebra_complex_split(c, ctx.lam, ctx.splitting)
        assert verify_complex(up, minimal=False) == []
        assert sp.forward.is_valid() and sp.backward.is_valid()
        assert sp.is_split()


def test_sgldim_closed_forms(ka2):
    r = sgldim_search(ka2)
    assert (r.lower_bound, r.closed_form) == (1, "hereditary")
    assert verify_complex(r.witness) == [] and length(r.witness) == 1
    m2 = matrix_algebra(2, 2)
    r = sgldim_search(m2)
    assert (r.lower_bound, r.closed_form) == (0, "semisimple")


def test_sgldim_search_agrees_with_closed_form(ka2):
    # the same value from exhaustive enumeration
    r = sgldim_search(ka2, length_bound=2, mult_bound=2, force_search=True)
    assert r.closed_form is None
    assert r.exhaustive_up_to == (2, 2)
    assert r.lower_bound == 1


@pytest.mark.parametrize("bound", [2, 3, 4])
def test_sgldim_dual_numbers_grows_with_bound(dual, bound):
    r = sgldim_search(dual, length_bound=bound, mult_bound=2, seed=7)
    assert r.lower_bound == bound
    assert r.exhaustive_up_to == (bound, 2)
    assert verify_complex(r.witness) == []
    assert length(r.witness) == bound
    assert is_indecomposable_complex(r.witness)


def test_sgldim_budget_marks_non_exhaustive():
    a = quiver((1, 2, 3), (("a", 1, 2), ("b", 2, 3)), 2)
    r = sgldim_search(a, length_bound=3, mult_bound=1, budget=1)
    assert r.exhaustive_up_to is None
    assert r.lower_bound == 2


def test_sgldim_hit_at_the_bound_is_exhaustive(dual):
    # the first candidate already reaches the length bound, so the budget is irrelevant
    r = sgldim_search(dual, length_bound=4, mult_bound=2, budget=1)
    assert r.lower_bound == 4 and r.exhaustive_up_to == (4, 2)


def test_sgldim_sampling(dual):
    r = sgldim_search(dual, length_bound=3, mult_bound=2, budget=50, seed=1, exhaustive_limit=1)
    assert r.sampled and r.exhaustive_up_to is None
    assert 0 <= r.lower_bound <= 3


def test_sgldim_report_serializes(dual):
    d = sgldim_search(dual, length_bound=2).to_dict()
    assert d["witness"]["dims"] == [2, 2, 2]
    assert np.array(d["witness"]["differentials"]).shape == (2, 2, 2)


def test_verdicts(ka2, dual, contexts):
    v = piecewise_hereditary_verdict(ka2)
    assert (v.kind, v.value) == ("finite", 1) and str(v) == "finite(1)"
    assert piecewise_hereditary_verdict(matrix_algebra(2, 3)).value == 0
    assert piecewise_hereditary_verdict(dual).kind == "not_pw_hereditary"
    v = piecewise_hereditary_verdict(dual, length_bound=3, use_gldim_certificate=False)
    assert v.kind == "unknown" and v.lower_bound == 3
    ctx = contexts("EX-C")
    v = piecewise_hereditary_verdict(ctx.skew_G, action_free=ctx.free)
    assert v.kind == "not_pw_hereditary" and "free" in v.reason


def test_exhaustive_search_below_bound_is_finite():
    # A3 with the zero relation: no indecomposable complex of length 3 with multiplicities <= 1
    a = quiver((1, 2, 3), (("a", 1, 2), ("b", 2, 3)), 2)
    v = piecewise_hereditary_verdict(a, length_bound=3, mult_bound=1)
    assert v.kind == "finite" and v.value == 2
