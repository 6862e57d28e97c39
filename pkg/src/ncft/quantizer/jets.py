"""Square-free truncated power series.

A jet in variables ``t_1..t_n`` keeps only monomials in which every variable
appears at most once (``t_a**2 = 0``), keyed by a bitmask.  Extracting the
mixed derivative ``d^n / dt_1..dt_n`` at zero is then just reading the
coefficient of the full mask, and every composition with a power series
terminates after ``n`` terms.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial


class Jet:
    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.c = {m: v for m, v in (coeffs or {}).items() if v}

    @classmethod
    def constant(cls, n: int, value) -> "Jet":
        return cls(n, {0: value})

    @classmethod
    def variable(cls, n: int, a: int, scale=1) -> "Jet":
        return cls(n, {1 << a: scale})

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(self.n, other)
        out = dict(self.c)
        for m, v in other.c.items():
            out[m] = out[m] + v if m in out else v
        return Jet(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.n, {m: -v for m, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.n, {m: v * other for m, v in self.c.items()})
        out: dict = {}
        for m1, v1 in self.c.items():
            for m2, v2 in other.c.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                out[m] = out[m] + v1 * v2 if m in out else v1 * v2
        return Jet(self.n, out)

    def __rmul__(self, other):
        return Jet(self.n, {m: other * v for m, v in self.c.items()})

    @property
    def constant_term(self):
        return self.c.get(0, 0)

    def top(self):
        """Coefficient of ``t_1 t_2 ... t_n``."""
        return self.c.get((1 << self.n) - 1, 0)

    def compose(self, coeffs) -> "Jet":
        """``sum_m coeffs[m] * self**m`` for a jet without constant term."""
        if self.constant_term:
            raise ValueError("series composition needs a jet with zero constant term")
        out = Jet.constant(self.n, coeffs[0]) if coeffs[0] else Jet(self.n)
        power = Jet.constant(self.n, 1)
        for m in range(1, len(coeffs)):
            power = power * self
            if not power.c:
                break
            if coeffs[m]:
                out = out + power * coeffs[m]
        return out

    def exp(self, one=1) -> "Jet":
        """``exp(self)`` for a jet without constant term.

        Differentiating ``E = exp(P)`` in the lowest variable of a mask ``M``
        gives ``E[M] = sum_S P[S] E[M - S]`` over submasks ``S`` of ``M`` that
        contain that variable.
        """
        if self.constant_term:
            raise ValueError("exp needs a jet with zero constant term")
        full = (1 << self.n) - 1
        e = {0: one}
        for m in range(1, full + 1):
            low = m & -m
            rest = m ^ low
            acc = None
            sub = rest
            while True:
                p = self.c.get(sub | low)
                if p is not None and e.get(rest ^ sub) is not None:
                    term = p * e[rest ^ sub]
                    acc = term if acc is None else acc + term
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            if acc is not None:
                e[m] = acc
        return Jet(self.n, e)


def asin_over_sqrt_coeffs(order: int):
    """``arcsin(sqrt(s))/sqrt(s) = sum_m (2m)! / (4^m (m!)^2 (2m+1)) s^m``."""
    return [
        Fraction(factorial(2 * m), 4**m * factorial(m) ** 2 * (2 * m + 1)) for m in range(order + 1)
    ]


def sinc_sqrt_coeffs(order: int):
    """``sin(sqrt(s))/sqrt(s) = sum_m (-1)^m s^m / (2m+1)!``."""
    return [Fraction((-1) ** m, factorial(2 * m + 1)) for m in range(order + 1)]


def sinhc_sqrt_coeffs(order: int):
    """``sinh(sqrt(s))/sqrt(s) = sum_m s^m / (2m+1)!``."""
    return [Fraction(1, factorial(2 * m + 1)) for m in range(order + 1)]


def reciprocal_coeffs(coeffs):
    """Coefficients of ``1/f`` for a power series with ``f(0) != 0``."""
    inv = [Fraction(1) / coeffs[0]]
    for m in range(1, len(coeffs)):
        acc = sum(coeffs[j] * inv[m - j] for j in range(1, m + 1))
        inv.append(-acc / coeffs[0])
    return inv


def two_sin_half_coeffs(order: int):
    """``2 sin(x/2) = sum_m (-1)^m x^(2m+1) / (4^m (2m+1)!)`` as a plain series in x."""
    out = [Fraction(0)] * (order + 1)
    for m in range(order // 2 + 1):
        if 2 * m + 1 <= order:
            out[2 * m + 1] = Fraction((-1) ** m, 4**m * factorial(2 * m + 1))
    return out
