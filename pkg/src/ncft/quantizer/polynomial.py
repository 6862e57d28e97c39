from __future__ import annotations

from itertools import combinations_with_replacement
from math import factorial

import numpy as np

from .rational import ComplexRational, format_complex


def _unit(dim: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(dim))


class SymPolynomial:
    """Polynomial on the dual Lie algebra with exact complex-rational coefficients.

    ``terms`` maps exponent tuples ``(m1, ..., md)`` to coefficients; zero
    coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != dim:
                raise ValueError(f"exponent {exps} does not have length {dim}")
            c = ComplexRational.coerce(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, dim, terms):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, dim: int, value=1) -> "SymPolynomial":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, i: int) -> "SymPolynomial":
        return cls(dim, {_unit(dim, i): 1})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "SymPolynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def zero(cls, dim: int) -> "SymPolynomial":
        return cls._raw(dim, {})

    # -- arithmetic
    def _check(self, other):
        if other.dim != self.dim:
            raise ValueError("polynomials live on spaces of different dimension")

    def __add__(self, other):
        if not isinstance(other, SymPolynomial):
            other = SymPolynomial.constant(self.dim, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SymPolynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPolynomial._raw(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymPolynomial):
            other = SymPolynomial.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymPolynomial":
        c = ComplexRational.coerce(c)
        if not c:
            return SymPolynomial.zero(self.dim)
        return SymPolynomial._raw(self.dim, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymPolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return SymPolynomial._raw(self.dim, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        result = SymPolynomial.constant(self.dim, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, SymPolynomial):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, ComplexRational)):
            return self == SymPolynomial.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- structure
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, n: int) -> "SymPolynomial":
        return SymPolynomial._raw(self.dim, {m: c for m, c in self.terms.items() if sum(m) == n})

    def conjugate(self) -> "SymPolynomial":
        return SymPolynomial._raw(self.dim, {m: c.conjugate() for m, c in self.terms.items()})

    def derivative(self, i: int) -> "SymPolynomial":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                n = list(m)
                n[i] -= 1
                out[tuple(n)] = c * m[i]
        return SymPolynomial._raw(self.dim, out)

    def laplacian(self) -> "SymPolynomial":
        out = SymPolynomial.zero(self.dim)
        for i in range(self.dim):
            out = out + self.derivative(i).derivative(i)
        return out

    def __call__(self, x):
        """Evaluate at a point (or an ``(n, dim)`` batch) of the real dual space."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            x = x[..., None]
        acc = np.zeros(x.shape[:-1], dtype=complex)
        for m, c in self.terms.items():
            acc = acc + complex(c) * np.prod(x ** np.array(m), axis=-1)
        return acc

    def sorted_terms(self):
        """Terms by descending degree, then descending exponents (stable output order)."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __repr__(self):
        return f"SymPolynomial({self.dim}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = format_monomial(m)
            coeff = format_complex(c)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append("-" + mono)
            elif coeff in ("1 i", "-1 i"):
                parts.append(f"{coeff[:-3]}i {mono}")
            else:
                parts.append(f"({coeff}) {mono}" if (c.re and c.im) else f"{coeff} {mono}")
        return " + ".join(parts).replace("+ -", "- ")


def format_monomial(exps) -> str:
    out = []
    for i, e in enumerate(exps):
        if e == 1:
            out.append(f"X{i + 1}")
        elif e > 1:
            out.append(f"X{i + 1}^{e}")
    return " ".join(out)


def monomials_of_degree(dim: int, n: int):
    """All exponent tuples of total degree ``n``."""
    for combo in combinations_with_replacement(range(dim), n):
        exps = [0] * dim
        for i in combo:
            exps[i] += 1
        yield tuple(exps)


def multinomial(exps) -> int:
    out = factorial(sum(exps))
    for e in exps:
        out //= factorial(e)
    return out
