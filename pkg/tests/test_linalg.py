import sympy
from hypothesis import given, strategies as st

from halg.linalg import (FinSpace, LinMap, det, from_dense, image, is_hermitian, kernel, psd_check, quotient, solve,
                         span, tensor_space)
from halg.scalar import I, ONE, Scalar, sc

small = st.builds(lambda a, b: Scalar(a, b), st.integers(-3, 3), st.integers(-2, 2))


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish entries give nontrivial kernels often
    entry = st.one_of(st.just(Scalar(0)), st.just(Scalar(0)), small)
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


def sym(s: Scalar):
    return sympy.Rational(int(s.re.numerator), int(s.re.denominator)) + sympy.I * sympy.Rational(
        int(s.im.numerator), int(s.im.denominator))


def as_map(rows):
    return LinMap.from_rows(FinSpace(len(rows[0])), FinSpace(len(rows)), rows)


def as_sympy(rows):
    return sympy.Matrix([[sym(x) for x in r] for r in rows])


@given(matrices())
def test_rank_and_kernel_match_sympy(rows):
    f = as_map(rows)
    M = as_sympy(rows)
    assert f.rank() == M.rank()
    ker = kernel(f)
    assert ker.dim == len(M.nullspace())
    for v in ker.basis:
        assert not f(v)
    assert image(f).dim + ker.dim == f.domain.dim


@given(matrices(4, 4))
def test_det_matches_sympy(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    assert sym(det(sq)) == sympy.expand(as_sympy(sq).det())


@given(matrices(), st.data())
def test_solve_finds_preimage(rows, data):
    f = as_map(rows)
    x = from_dense([data.draw(small) for _ in range(f.domain.dim)])
    y = f(x)
    z = solve(f, y)
    assert z is not None and f(z) == y


def test_solve_reports_inconsistent():
    f = LinMap.from_rows(FinSpace(1), FinSpace(2), [[1], [1]])
    assert solve(f, {0: ONE}) is None


@given(matrices(4, 4), matrices(4, 4))
def test_composition_is_matrix_product(a, b):
    f, g = as_map(a), as_map(b)
    if g.codomain.dim != f.domain.dim:
        return
    assert as_sympy((f @ g).rows()) == (as_sympy(a) * as_sympy(b)).expand()


def test_antilinear_application_and_kernel():
    sp = FinSpace(2)
    star = LinMap(sp, sp, [{0: ONE}, {1: I}], antilinear=True)
    assert star({0: I, 1: ONE}) == {0: -I, 1: I}
    f = LinMap(sp, FinSpace(1), [{0: ONE}, {0: I}], antilinear=True)
    ker = kernel(f)
    assert ker.dim == 1 and not f(ker.basis[0])


def test_inverse_and_bijective():
    f = LinMap.from_rows(FinSpace(2), FinSpace(2), [[1, I], [0, 2]])
    assert f.is_bijective()
    assert f @ f.inverse() == LinMap.identity(FinSpace(2))


def test_subspace_operations():
    s = span([{0: ONE, 1: ONE}, {1: ONE}], 3)
    t = span([{1: ONE, 2: ONE}], 3)
    assert s.dim == 2 and (s + t).is_full() and s.intersect(t).dim == 0
    assert {0: sc(5)} in s and {2: ONE} not in s
    assert span([{0: ONE}], 3) <= s
    q, pi = quotient(FinSpace(3), s)
    assert q.dim == 1 and kernel(pi) == s


def test_tensor_labels():
    t = tensor_space(FinSpace(["a", "b"]), FinSpace(["x", "y"]))
    assert t.labels == ("a⊗x", "a⊗y", "b⊗x", "b⊗y")


def test_positive_definite_exact():
    assert psd_check([[2, I], [-I, 1]])
    assert not psd_check([[1, 2], [2, 1]])
    assert not psd_check([[1, 0], [0, 0]])
    assert is_hermitian([[1, I], [-I, 0]]) and not is_hermitian([[1, I], [I, 0]])
