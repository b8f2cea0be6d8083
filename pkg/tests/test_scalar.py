from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from halg.scalar import I, ONE, ZERO, Scalar, format_scalar, i_power, parse_scalar, sc

rats = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
scalars = st.builds(lambda a, b: Scalar(a, b), rats, rats)


def to_sympy(s: Scalar):
    return sympy.Rational(int(s.re.numerator), int(s.re.denominator)) + sympy.I * sympy.Rational(
        int(s.im.numerator), int(s.im.denominator))


@given(scalars, scalars)
def test_field_ops_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    if b:
        assert to_sympy(a / b) == sympy.nsimplify(sympy.expand_complex(to_sympy(a) / to_sympy(b)))


@given(scalars)
def test_conj_and_norm(a):
    assert a * a.conj() == Scalar(a.norm2())
    assert a.conj().conj() == a
    if a:
        assert a * a.inverse() == ONE


@given(scalars)
def test_format_parse_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == a


@pytest.mark.parametrize("text,val", [
    ("0", ZERO), ("-3/4", Scalar(Fraction(-3, 4))), ("i", I), ("-i", -I), ("1*i", I), ("2/3*i", Scalar(0, Fraction(2, 3))),
    ("1/2-1/3*i", Scalar(Fraction(1, 2), Fraction(-1, 3))), ("1 + i", Scalar(1, 1)), ("-2-i", Scalar(-2, -1)),
])
def test_parse_forms(text, val):
    assert parse_scalar(text) == val


@pytest.mark.parametrize("bad", ["", "x", "1.5", "1/0", "i*i", "1+2"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        sc(1.5 + 2j)
    with pytest.raises(TypeError):
        sc(0.5)


def test_i_powers():
    assert [i_power(k) for k in range(-1, 5)] == [-I, ONE, I, -ONE, -I, ONE]


def test_hash_consistent_with_eq():
    assert hash(Scalar(1)) == hash(sc("1")) and {Scalar(0, 1): 1}[I] == 1
