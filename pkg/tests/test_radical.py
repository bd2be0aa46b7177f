import numpy as np
import pytest

from skewgroup.algebra import (
    QuiverPresentation,
    algebra_from_quiver,
    algebra_from_table,
    matrix_algebra,
    product_algebra,
    verify_complete_idempotent_set,
)
from skewgroup.radical import (
    NonSplitError,
    _coprime_split,
    _pmul,
    check_split,
    is_local,
    is_split,
    lift_primitive_idempotents,
    minimal_polynomial,
    radical_algebra,
    radical_power,
)


def gf4():
    # basis 1, w with w^2 = w + 1 over GF(2)
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0] = [1, 0]
    c[0, 1] = c[1, 0] = [0, 1]
    c[1, 1] = [1, 1]
    return algebra_from_table(2, c, [1, 0])


def dual(p):
    return algebra_from_quiver(QuiverPresentation((1,), (("x", 1, 1),), ([(1, ("x", "x"))],), 2), p)


def test_is_local_semantics():
    assert is_local(dual(3))
    assert not is_local(product_algebra(dual(2), dual(2)))
    assert not is_local(matrix_algebra(2, 2))
    with pytest.raises(NonSplitError):
        is_local(gf4())


def test_non_split_quotient_is_reported():
    assert not is_split(gf4())
    with pytest.raises(NonSplitError):
        check_split(gf4())
    with pytest.raises(NonSplitError):
        lift_primitive_idempotents(gf4())


def test_radical_is_nilpotent_with_semisimple_quotient():
    a = algebra_from_quiver(QuiverPresentation((1, 2, 3), (("a", 1, 2), ("b", 2, 3)), (), 3), 3)
    assert radical_algebra(a).shape[1] == 3
    assert radical_power(a, 2).shape[1] == 1
    assert radical_power(a, a.dim).shape[1] == 0


@pytest.mark.parametrize(
    "alg, count",
    [
        (matrix_algebra(2, 2), 2),
        (matrix_algebra(3, 3), 3),
        (product_algebra(matrix_algebra(2, 2), dual(2)), 3),
        (dual(5), 1),
    ],
)
def test_lifted_idempotents_are_complete_and_primitive(alg, count):
    es = lift_primitive_idempotents(alg, seed=3)
    assert len(es) == count
    assert verify_complete_idempotent_set(alg, es) == []


def test_idempotents_in_a_twisted_basis_of_split_semisimple_algebra():
    # GF(2) x GF(2) written in the basis 1, e: e^2 = e; splitting needs x^2 - x = x(x - 1)
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0] = [1, 0]
    c[0, 1] = c[1, 0] = c[1, 1] = [0, 1]
    a = algebra_from_table(2, c, [1, 0])
    es = lift_primitive_idempotents(a)
    assert verify_complete_idempotent_set(a, es) == []


def test_minimal_polynomial():
    a = matrix_algebra(2, 3)
    # E12 is nilpotent of order 2
    assert minimal_polynomial(a, a.basis_vector(1)) == [0, 0, 1]
    assert minimal_polynomial(a, a.unit) == [2, 1]


def test_coprime_split_of_polynomials():
    rng = np.random.default_rng(0)
    f = _pmul([1, 1, 1], [1, 1, 0, 1], 2)
    g, h = _coprime_split(f, 2, rng)
    assert _pmul(g, h, 2) == f
    assert _coprime_split(_pmul([1, 1, 1], [1, 1, 1], 2), 2, rng) is None
    # two distinct quartics of the same degree need equal-degree splitting
    f = _pmul([1, 1, 0, 0, 1], [1, 0, 0, 1, 1], 2)
    g, h = _coprime_split(f, 2, rng)
    assert _pmul(g, h, 2) == f and len(g) == len(h) == 5
    f = _pmul([1, 0, 1], [2, 1, 1], 3)
    g, h = _coprime_split(f, 3, rng)
    assert _pmul(g, h, 3) == f
