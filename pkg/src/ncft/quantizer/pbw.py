"""Universal enveloping algebra in Poincare-Birkhoff-Witt normal order.

Basis monomials are ``X^_1^{m1} X^_2^{m2} ... X^_d^{md}`` (generator 1 leftmost),
keyed by the exponent tuple ``(m1, ..., md)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..groups import SU2_STRUCTURE, StructureConstants
from .polynomial import SymPolynomial, format_monomial
from .rational import ONE, ComplexRational, format_complex


def _accumulate(acc: dict, terms: dict, scale=None) -> None:
    for m, c in terms.items():
        if scale is not None:
            c = c * scale
        s = acc.get(m)
        if s is None:
            acc[m] = c
        else:
            s = s + c
            if s:
                acc[m] = s
            else:
                del acc[m]


class Envelope:
    """Multiplication tables of ``U(g)`` for one set of structure constants.

    The memo dictionaries only ever gain entries, each fully built before it is
    inserted, so concurrent readers always see complete values.
    """

    def __init__(self, structure: StructureConstants):
        self.structure = structure
        self.dim = structure.dim
        # [X_i, X_j] = i c_ij^k X_k, stored for i > j
        self._bracket = {}
        for i in range(self.dim):
            for j in range(i):
                row = []
                for k in range(self.dim):
                    c = structure.c[i][j][k]
                    if c:
                        row.append((k, ComplexRational(0, Fraction(c))))
                self._bracket[i, j] = row
        self._gen_cache: dict = {}
        self._sym_cache: dict = {}

    def unit(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def gen_times_monomial(self, i: int, mono: tuple) -> dict:
        """``X^_i * (PBW monomial)`` rewritten in normal order."""
        key = (i, mono)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        j = next((a for a, e in enumerate(mono) if e), None)
        if j is None or i <= j:
            m = list(mono)
            m[i] += 1
            out = {tuple(m): ONE}
        else:
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            # X_i X_j rest = X_j (X_i rest) + [X_i, X_j] rest
            out = self.gen_times(j, self.gen_times_monomial(i, rest))
            for k, coeff in self._bracket[i, j]:
                _accumulate(out, self.gen_times_monomial(k, rest), coeff)
        self._gen_cache[key] = out
        return out

    def gen_times(self, i: int, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            _accumulate(out, self.gen_times_monomial(i, m), c)
        return out

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for mono, c in a.items():
            v = b
            for i in reversed(range(self.dim)):
                for _ in range(mono[i]):
                    v = self.gen_times(i, v)
            _accumulate(out, v, c)
        return out

    def symmetrized(self, exps: tuple) -> dict:
        """PBW form of the symmetrization of the commutative monomial ``X^exps``.

        Uses ``S(X_{i1}..X_{in}) = (1/n) sum_a X^_{ia} S(word without a)``,
        i.e. grouping the n! orderings by their first letter, which needs no
        enumeration of permutations.
        """
        hit = self._sym_cache.get(exps)
        if hit is not None:
            return hit
        n = sum(exps)
        if n == 0:
            out = {exps: ONE}
        else:
            out = {}
            for j, e in enumerate(exps):
                if e:
                    lower = list(exps)
                    lower[j] -= 1
                    _accumulate(out, self.gen_times(j, self.symmetrized(tuple(lower))), Fraction(e, n))
        self._sym_cache[exps] = out
        return out


@lru_cache(maxsize=None)
def envelope(structure: StructureConstants = SU2_STRUCTURE) -> Envelope:
    return Envelope(structure)


class PBWElement:
    """Element of ``U(g)`` as a PBW-ordered linear combination."""

    __slots__ = ("env", "terms")

    def __init__(self, terms=None, structure: StructureConstants = SU2_STRUCTURE):
        self.env = envelope(structure)
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != self.env.dim:
                raise ValueError(f"exponent {m} does not match dimension {self.env.dim}")
            c = ComplexRational.coerce(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, env: Envelope, terms: dict) -> "PBWElement":
        obj = cls.__new__(cls)
        obj.env = env
        obj.terms = terms
        return obj

    @classmethod
    def generator(cls, i: int, structure: StructureConstants = SU2_STRUCTURE) -> "PBWElement":
        env = envelope(structure)
        return cls._raw(env, {env.unit(i): ONE})

    @classmethod
    def one(cls, structure: StructureConstants = SU2_STRUCTURE) -> "PBWElement":
        env = envelope(structure)
        return cls._raw(env, {(0,) * env.dim: ONE})

    @property
    def structure(self) -> StructureConstants:
        return self.env.structure

    def _check(self, other: "PBWElement"):
        if other.env is not self.env:
            raise ValueError("elements belong to different enveloping algebras")

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            other = PBWElement.one(self.structure) * other
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return PBWElement._raw(self.env, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement._raw(self.env, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return pbw_multiply(self, other)
        c = ComplexRational.coerce(other)
        if not c:
            return PBWElement._raw(self.env, {})
        return PBWElement._raw(self.env, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __pow__(self, n: int):
        out = PBWElement.one(self.structure)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.env is other.env and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def commutator(self, other: "PBWElement") -> "PBWElement":
        return self * other - other * self

    def __repr__(self):
        return f"PBWElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            mono = format_monomial(m).replace("X", "X^")
            coeff = format_complex(c)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            else:
                parts.append(f"({coeff}) {mono}")
        return " + ".join(parts)


def pbw_multiply(a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in ``U(g)``, normal ordered by repeated commutator substitution."""
    a._check(b)
    return PBWElement._raw(a.env, a.env.multiply(a.terms, b.terms))


def symmetrize(f: SymPolynomial, structure: StructureConstants = SU2_STRUCTURE) -> PBWElement:
    """Symmetric (Weyl) ordering ``Sym(g) -> U(g)``."""
    env = envelope(structure)
    if f.dim != env.dim:
        raise ValueError("polynomial dimension does not match the Lie algebra")
    out: dict = {}
    for m, c in f.terms.items():
        _accumulate(out, env.symmetrized(m), c)
    return PBWElement._raw(env, out)


def triangular_inverse(target: dict, image, dim: int) -> dict:
    """Invert a degree-filtered linear map given on monomials.

    ``image(m)`` must equal the basis element ``m`` plus terms of strictly
    lower total degree.  Peeling off the top degree repeatedly terminates and
    is exact.
    """
    remaining = dict(target)
    out: dict = {}
    while remaining:
        top = max(sum(m) for m in remaining)
        lead = [(m, c) for m, c in remaining.items() if sum(m) == top]
        for m, c in lead:
            _accumulate(out, {m: c})
            img = image(m)
            _accumulate(remaining, img, -c)
            if remaining.get(m):
                raise ArithmeticError("map is not unitriangular in total degree")
    return out


def symmetrize_inverse(u: PBWElement) -> SymPolynomial:
    """The unique polynomial whose symmetrization is ``u``."""
    env = u.env
    return SymPolynomial._raw(env.dim, triangular_inverse(u.terms, env.symmetrized, env.dim))
