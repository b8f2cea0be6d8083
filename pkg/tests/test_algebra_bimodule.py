from collections import Counter

import pytest
from hypothesis import given, strategies as st

from halg.algebra import (cyclic_group, function_algebra, ground_field, group_algebra, matrix_algebra, opposite,
                          symmetric_group, tensor_algebra, validate_group, verify_algebra, verify_star)
from halg.bimodule import (BalancedTensor, DimensionTooLarge, balanced_tensor, regular_bimodule, takeuchi_closure,
                           takeuchi_left, takeuchi_right, tjoin, tsplit)
from halg.constructors import convolution_algebroid
from halg.groupoid import GroupoidError, groupoid_preset, pair_groupoid
from halg.linalg import from_dense
from halg.scalar import Scalar

ALGEBRAS = [ground_field(), function_algebra(3), matrix_algebra(2), group_algebra(*reversed(cyclic_group(3))),
            group_algebra(*reversed(symmetric_group(3)))]


@pytest.mark.parametrize("a", ALGEBRAS, ids=lambda a: a.name)
def test_presets_are_star_algebras(a):
    assert verify_algebra(a).ok
    assert verify_star(a).ok
    assert verify_algebra(opposite(a)).ok


def test_tensor_algebra():
    t = tensor_algebra(matrix_algebra(2), function_algebra(2))
    assert t.dim == 8 and verify_algebra(t).ok


def test_symmetric_group_orders():
    assert [len(symmetric_group(k)[0]) for k in (1, 2, 3, 4)] == [1, 2, 6, 24]


def test_group_table_validation():
    with pytest.raises(ValueError):
        validate_group([[0, 1], [0, 1]])


ints = st.builds(lambda a, b: Scalar(a, b), st.integers(-3, 3), st.integers(-3, 3))


@given(st.lists(ints, min_size=4, max_size=4), st.lists(ints, min_size=4, max_size=4))
def test_matrix_star_is_antimultiplicative(x, y):
    m = matrix_algebra(2)
    u, v = from_dense(x), from_dense(y)
    star = m.star
    assert star(m.mul(u, v)) == m.mul(star(v), star(u))
    assert star(star(u)) == u


@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_tensor_index_roundtrip(parts):
    dims = [4, 4, 4]
    assert tsplit(tjoin(parts, dims), dims) == tuple(parts)


def _endpoint_counts(g):
    return Counter(g.tgt)


@pytest.mark.parametrize("p", ["unit:3", "pair:2", "pair:3", "point:Z2", "action:Z2:swap2"])
def test_tensor_dims_count_composable_pairs(p):
    # oracle: balancing over C(X) glues at a shared object, so dim = Σ_x c(x)^k
    g = groupoid_preset(p)
    L = convolution_algebroid(g).core.left
    c = _endpoint_counts(g)
    assert L.tensor.dim == sum(v ** 2 for v in c.values())
    assert L.triple.dim == sum(v ** 3 for v in c.values())
    generic = BalancedTensor([L.bimodule(), L.bimodule()], mode="generic")
    assert generic.dim == L.tensor.dim
    T = takeuchi_left(L.H, L.A, L.s, L.t)
    # both endpoints must agree: Σ_{x,y} |hom(x, y)|²
    assert T.dim == sum(v ** 2 for v in Counter(zip(g.src, g.tgt)).values())
    assert takeuchi_closure(L.H, T) == (True, True)


def test_right_takeuchi_matches():
    R = convolution_algebroid(pair_groupoid(2)).core.right
    assert takeuchi_right(R.H, R.A, R.s, R.t).dim == 4


def test_regular_bimodule_tensor():
    for a in (matrix_algebra(2), function_algebra(3)):
        m = regular_bimodule(a)
        assert m.verify().ok
        assert balanced_tensor(m, m).dim == a.dim


def test_dimension_guard(monkeypatch):
    monkeypatch.setenv("HALG_MAX_DIM", "10")
    m = regular_bimodule(matrix_algebra(2))
    with pytest.raises(DimensionTooLarge):
        BalancedTensor([m, m], mode="generic")


def test_bad_groupoid_preset():
    with pytest.raises(GroupoidError):
        groupoid_preset("tree:3")
    with pytest.raises(GroupoidError):
        groupoid_preset("action:S3:swap2")
