import pytest

from halg.algebra import cyclic_group, function_algebra, group_algebra, matrix_algebra, symmetric_group
from halg.constructors import (connes_moscovici, convolution_algebroid, enveloping_algebroid, hopf_algebra_algebroid,
                               permutation_action, relabel_isomorphism, swap_action, verify_module_algebra)
from halg.groupoid import groupoid_preset
from halg.hopf import (antipode_uniqueness, counit_uniqueness, derived_identities, opposite_hopf,
                       star_takeuchi_bijection, verify_hopf, verify_left_bialgebroid, verify_right_bialgebroid,
                       verify_star)
from halg.linalg import LinMap
from halg.scalar import ONE

DERIVED_IDS = 26


def z(n):
    names, table = cyclic_group(n)
    return group_algebra(table, names)


def full_ok(h):
    reps = [verify_left_bialgebroid(h.core.left), verify_right_bialgebroid(h.core.right), verify_hopf(h.core),
            derived_identities(h.core), verify_star(h)]
    return [x for r in reps for x in r.failed_ids()]


@pytest.mark.parametrize("p", ["unit:2", "pair:2", "point:Z3", "point:S3", "action:Z3:cycle3", "action:S3:natural"])
def test_groupoid_algebroids(p):
    h = convolution_algebroid(groupoid_preset(p))
    assert full_ok(h) == []
    assert len(derived_identities(h.core).items) == DERIVED_IDS
    assert star_takeuchi_bijection(h)


def test_convolution_dims():
    h = convolution_algebroid(groupoid_preset("pair:3"))
    assert (h.H.dim, h.core.left.A.dim) == (9, 3)
    # S(δ_g) = δ_{g⁻¹}
    S = h.core.S
    assert S.cols[h.H.space.index("(0,1)")] == {h.H.space.index("(1,0)"): ONE}


@pytest.mark.parametrize("a", [function_algebra(2), matrix_algebra(2)], ids=lambda a: a.name)
def test_enveloping(a):
    h = enveloping_algebroid(a)
    assert h.H.dim == a.dim ** 2
    assert full_ok(h) == []


def test_hopf_algebra_as_algebroid():
    assert full_ok(hopf_algebra_algebroid(z(3))) == []


def test_bicrossed_product_permutations():
    names, table = symmetric_group(3)
    q = group_algebra(table, names)
    h = connes_moscovici(q, function_algebra(3), permutation_action(q, [[int(c) - 1 for c in nm] if nm != "e"
                                                                         else [0, 1, 2] for nm in names], 3))
    assert h.H.dim == 6 * 9
    assert full_ok(h) == []


def test_bicrossed_needs_module_algebra():
    q = z(2)
    bad = swap_action(q, 2)
    bad[1] = LinMap(bad[1].domain, bad[1].codomain, [{0: ONE}, {0: ONE}])
    assert not verify_module_algebra(q, function_algebra(2), bad).ok
    with pytest.raises(ValueError):
        connes_moscovici(q, function_algebra(2), bad)


def test_opposite_is_hopf():
    h = convolution_algebroid(groupoid_preset("action:Z2:swap2"))
    op = opposite_hopf(h.core)
    assert verify_hopf(op).ok and derived_identities(op).ok


def test_relabeling_is_isomorphism():
    assert relabel_isomorphism(groupoid_preset("pair:3"), [2, 0, 1]).ok


@pytest.mark.parametrize("p", ["pair:2", "action:Z2:swap2", "unit:2"])
def test_uniqueness(p):
    h = convolution_algebroid(groupoid_preset(p))
    for r in (counit_uniqueness(h.core.left), counit_uniqueness(h.core.right), antipode_uniqueness(h.core)):
        assert r.ok, r.failed_ids()


def test_broken_antipode_detected():
    h = convolution_algebroid(groupoid_preset("pair:2"))
    core = h.core
    sp = h.H.space
    cols = [dict(c) for c in core.S.cols]
    cols[sp.index("(0,1)")] = {sp.index("(1,0)"): ONE / 2}
    cols[sp.index("(1,0)")] = {sp.index("(0,1)"): ONE * 2}
    from dataclasses import replace
    bad = replace(core, S=LinMap(sp, sp, cols))
    rep = verify_hopf(bad)
    assert "antipode-axiom-left" in rep.failed_ids()
    assert rep.item("antipode-axiom-left").witness
