"""Exact Gaussian-rational scalars.

The base field for everything in this package is Q(i): numbers a + b*i with
a, b reduced rationals.  All arithmetic is exact; equality is syntactic
equality of the canonical reduced form.  Rationals are backed by gmpy2.mpq
when available (much faster), falling back to fractions.Fraction.

String format (used everywhere scalars are serialized):

    "3", "-3/4"            pure rationals (denominator omitted when 1)
    "i", "-i", "2/3*i"     pure imaginary
    "1/2+1/3*i", "1-2*i"   mixed, imaginary part last

The parser accepts every form the writer emits.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _Q

__all__ = ["Rational", "Scalar", "ZERO", "ONE", "I", "rat", "parse_scalar"]

Rational = type(_Q(0))


def rat(p, q=1):
    """Exact rational p/q (q > 0 after reduction)."""
    return _Q(p, q)


_R0 = _Q(0)
_R1 = _Q(1)


class Scalar:
    """An element of Q(i), immutable and always in reduced form."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Rational else _Q(re))
        object.__setattr__(self, "im", im if type(im) is Rational else _Q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar(a * c, _R0)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        a, b, c, d = self.re, self.im, other.re, other.im
        if not d:
            return Scalar(a / c, b / c)
        n = c * c + d * d
        return Scalar((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def inverse(self) -> "Scalar":
        return ONE / self

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        if abs(self.im) == 1:
            ims = "i"
        else:
            ims = f"{abs(self.im)}*i"
        sign = "-" if self.im < 0 else "+"
        if not self.re:
            return ims if sign == "+" else "-" + ims
        return f"{self.re}{sign}{ims}"

    def __repr__(self):
        return f"Scalar({self})"


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_RAT = r"\d+(?:/\d+)?"
_PURE_RE = re.compile(rf"^([+-]?)({_RAT})$")
_PURE_IM = re.compile(rf"^([+-]?)(?:({_RAT})\*)?i$")
_MIXED = re.compile(rf"^([+-]?{_RAT})([+-])(?:({_RAT})\*)?i$")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar string format (round-trips with str)."""
    s = text.strip().replace(" ", "")
    m = _PURE_RE.match(s)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        return Scalar(sign * _Q(m.group(2)))
    m = _PURE_IM.match(s)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        mag = _Q(m.group(2)) if m.group(2) else _R1
        return Scalar(_R0, sign * mag)
    m = _MIXED.match(s)
    if m:
        re_part = _Q(m.group(1))
        sign = -1 if m.group(2) == "-" else 1
        mag = _Q(m.group(3)) if m.group(3) else _R1
        return Scalar(re_part, sign * mag)
    raise ValueError(f"not a scalar literal: {text!r}")
