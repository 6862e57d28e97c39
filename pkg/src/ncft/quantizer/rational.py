from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class ComplexRational:
    """Exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, (Rational, int)):
            return cls(value)
        if isinstance(value, float):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot convert {type(value).__name__} to ComplexRational")

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            return ComplexRational(self.re * o.re, self.im * o.re)
        if not self.im:
            return ComplexRational(self.re * o.re, self.re * o.im)
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("division by zero in Q(i)")
        return ComplexRational(
            (self.re * o.re + self.im * o.im) / den, (self.im * o.re - self.re * o.im) / den
        )

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ComplexRational(1) / self ** (-n)
        result, base = ComplexRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_complex(self)


def _coerce(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction)):
        return ComplexRational(value)
    if isinstance(value, Rational):
        return ComplexRational(Fraction(value))
    return None


I = ComplexRational(0, 1)
ONE = ComplexRational(1)
ZERO = ComplexRational(0)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_complex(z: ComplexRational) -> str:
    """``a/b``, ``c/d i`` or ``a/b+c/d i``; the format the CLI golden files use."""
    if not z.im:
        return format_rational(z.re)
    im = format_rational(z.im)
    if not z.re:
        return f"{im} i"
    sign = "" if z.im < 0 else "+"
    return f"{format_rational(z.re)}{sign}{im} i"
