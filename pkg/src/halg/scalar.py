"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

_IMAG = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?i$")
_NUM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$")


def _rat(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot read {x!r} as a rational")


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            self.re, self.im = re.re, re.im
            return
        self.re = _rat(re)
        self.im = _rat(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> Scalar:
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # arithmetic
    def __add__(self, o):
        if not isinstance(o, Scalar):
            o = sc(o)
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        if not isinstance(o, Scalar):
            o = sc(o)
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return sc(o) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, o):
        if not isinstance(o, Scalar):
            o = sc(o)
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Scalar._raw(a * c, b)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        a, b = self.re, self.im
        n = a * a + b * b
        if not n:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar._raw(a / n, -b / n)

    def __truediv__(self, o):
        if not isinstance(o, Scalar):
            o = sc(o)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return sc(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self) -> Scalar:
        return Scalar._raw(self.re, -self.im)

    def norm2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # comparison
    def __eq__(self, o):
        if isinstance(o, Scalar):
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, Fraction, mpq)):
            return not self.im and self.re == o
        return NotImplemented

    def __hash__(self):
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_positive_real(self) -> bool:
        return not self.im and self.re > 0

    # text
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


def _fmt_rat(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Serialize as "p/q" or "p/q+r/s*i"."""
    if not s.im:
        return _fmt_rat(s.re)
    im = _fmt_rat(abs(s.im))
    sign = "+" if s.im > 0 else "-"
    if not s.re:
        return ("" if sign == "+" else "-") + f"{im}*i"
    return f"{_fmt_rat(s.re)}{sign}{im}*i"


def parse_scalar(text: str) -> Scalar:
    t = text.replace(" ", "")
    im_only = _IMAG.match(t)
    if im_only:
        sign, mag = im_only.groups()
        im = mpq(mag) if mag else mpq(1)
        return Scalar(0, -im if sign == "-" else im)
    m = _NUM.match(t)
    if not m or t == "":
        raise ValueError(f"malformed scalar {text!r}")
    re_part, sign, im_part = m.groups()
    if sign is None:
        if re_part is None:
            raise ValueError(f"malformed scalar {text!r}")
        return Scalar(mpq(re_part))
    im = mpq(im_part) if im_part else mpq(1)
    if sign == "-":
        im = -im
    return Scalar(mpq(re_part) if re_part else 0, im)


def sc(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, complex):
        raise TypeError("floats are not exact; pass re and im rationals")
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def i_power(k: int) -> Scalar:
    return (ONE, I, -ONE, -I)[k % 4]
