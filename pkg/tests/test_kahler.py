import pytest

from halg.calculus import trivial_symmetry
from halg.kahler import (Bigrading, BigradingError, NotAlmostSymplectic, exterior_calculus, hermitian_data,
                         kahler_fixture, laplacians, lefschetz, metric_and_inner_product, split_d,
                         verify_complex_structure, verify_hermitian)
from halg.linalg import Subspace, scale
from halg.scalar import I, ONE, sc

FIXTURES = ["toykahler", "kodaira-thurston", "laplacian"]


@pytest.fixture(scope="module", params=FIXTURES)
def fx(request):
    return kahler_fixture(request.param)


def test_suites(fx):
    want = {"toykahler": [], "laplacian": [],
            "kodaira-thurston": ["kahler/kahler-form-closed", "invariant/kahler/kahler-form-closed"]}
    assert fx.suite().failed_ids() == want[fx.name]


def test_star_of_one_is_normalised_volume(fx):
    # ⋆1 = σⁿ/n!
    hd = fx.hermitian()
    A = fx.c.dga.alg
    top, fact = dict(A.unit), 1
    for k in range(1, hd.n + 1):
        top, fact = A.mul(top, hd.sigma), fact * k
    assert hd.hodge(dict(A.unit)) == scale(top, ONE / sc(fact))


def test_kahler_identities(fx):
    # Δ_d = 2Δ_∂ = 2Δ_∂̄ exactly when the form is closed
    hd = fx.hermitian()
    lap, rep = laplacians(hd, metric_and_inner_product(hd)[0])
    assert rep.ok
    holds = lap.lap_d == lap.lap_delta.scaled(sc(2)) and lap.lap_delta == lap.lap_delta_bar
    assert holds == (fx.name != "kodaira-thurston")
    assert hd.hodge @ lap.lap_d == lap.lap_d @ hd.hodge


def test_gram_positive(fx):
    met, rep = metric_and_inner_product(fx.hermitian())
    assert rep.ok
    assert all(met.gram[i][i].is_positive_real() for i in range(len(met.gram)))


def test_dolbeault_split_sums_to_d(fx):
    dol = split_d(fx.c, fx.bg)
    assert dol.delta + dol.delta_bar == fx.c.dga.d


def test_kodaira_thurston_differential():
    fx = kahler_fixture("kodaira-thurston")
    A = fx.c.dga.alg
    d = fx.c.dga.d
    w1v1 = A.space.index("w1∧v1")
    assert d({A.space.index("w2"): ONE}) == {w1v1: -ONE / 2}
    assert d(fx.sigma)


def test_degenerate_form_rejected():
    fx = kahler_fixture("toykahler")
    with pytest.raises(NotAlmostSymplectic):
        lefschetz(fx.c, {})
    rep = verify_hermitian(fx.c, fx.bg, {}, restrict=False)
    assert "lefschetz-isomorphisms" in rep.failed_ids()


def test_odd_dimension_rejected():
    dga = exterior_calculus(["x"], {}, {"x": {"x": 1}})
    with pytest.raises(NotAlmostSymplectic):
        lefschetz(trivial_symmetry(dga), {})


def test_bigrading_must_be_direct_sum():
    fx = kahler_fixture("toykahler")
    dga = fx.c.dga
    sp = dga.alg.space
    comps = dict(fx.bg.components)
    comps[(0, 1)] = Subspace(dga.dim, [{sp.index("e10"): ONE}])
    with pytest.raises(BigradingError):
        Bigrading(dga, comps).projections()


def test_leaking_bigrading_fails_star():
    fx = kahler_fixture("toykahler")
    dga = fx.c.dga
    sp = dga.alg.space
    e10, e01 = sp.index("e10"), sp.index("e01")
    comps = dict(fx.bg.components)
    comps[(1, 0)] = Subspace(dga.dim, [{e10: ONE, e01: ONE}])
    comps[(0, 1)] = Subspace(dga.dim, [{e10: ONE, e01: -ONE}])
    rep = verify_complex_structure(fx.c, Bigrading(dga, comps), restrict=False)
    assert "bigrading-star" in rep.failed_ids()


def test_rescaled_form_still_hermitian():
    fx = kahler_fixture("toykahler")
    hd = hermitian_data(fx.c, fx.bg, scale(fx.sigma, sc(3)), fx.vol, fx.tau)
    assert hd.hodge(dict(fx.c.dga.alg.unit)) == {fx.c.dga.alg.space.index("e10∧e01"): 3 * I}
