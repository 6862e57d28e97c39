"""Closed-form second- and third-order star-monomials on su(2).

Every su(2) map considered here gives

    X_i * X_j = X_i X_j + i eps_ijk X_k + c2 delta_ij
    X_i * X_j * X_k = X_i X_j X_k + i (eps_ijm X_k + eps_ikm X_j + eps_jkm X_i) X_m
                      + a delta_jk X_i + b delta_ik X_j + c delta_ij X_k + c0 eps_ijk

with map-dependent rationals ``c2, (a, b, c), c0``.  Two sets of constants
are kept: ``TABULATED`` is the widely quoted table, ``DERIVED`` is what exact
normal ordering in U(su(2)) produces.  They differ for Symmetric and Duflo at
third order; see the README.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..groups import _levi_civita
from ..maps import MapKind
from .polynomial import SymPolynomial
from .rational import I, ComplexRational

F = Fraction

# map -> (c2, (a, b, c), c0); c0 multiplies i * eps_ijk
TABULATED = {
    MapKind.SYMMETRIC: (F(0), (F(2, 3), F(-1, 3), F(2, 3)), F(0)),
    MapKind.DUFLO: (F(-1, 3), (F(1, 3), F(-2, 3), F(1, 3)), F(0)),
    MapKind.FLM: (F(0), (F(1), F(-1), F(1)), F(0)),
}

DERIVED = {
    MapKind.SYMMETRIC: (F(0), (F(2, 3), F(-4, 3), F(2, 3)), F(0)),
    MapKind.DUFLO: (F(-1, 3), (F(1, 3), F(-5, 3), F(1, 3)), F(-1, 3)),
    MapKind.FLM: (F(0), (F(1), F(-1), F(1)), F(0)),
}


def _x(i: int) -> SymPolynomial:
    return SymPolynomial.variable(3, i)


def second_order(i: int, j: int, c2: Fraction) -> SymPolynomial:
    out = _x(i) * _x(j)
    for k in range(3):
        e = _levi_civita(i, j, k)
        if e:
            out = out + _x(k).scale(I * e)
    if i == j and c2:
        out = out + SymPolynomial.constant(3, c2)
    return out


def third_order(i: int, j: int, k: int, deltas, c0: Fraction = F(0)) -> SymPolynomial:
    a, b, c = deltas
    out = _x(i) * _x(j) * _x(k)
    for m in range(3):
        lin = SymPolynomial.zero(3)
        for (p, q, r) in ((i, j, k), (i, k, j), (j, k, i)):
            e = _levi_civita(p, q, m)
            if e:
                lin = lin + _x(r).scale(e)
        if lin:
            out = out + (lin * _x(m)).scale(I)
    if j == k:
        out = out + _x(i).scale(a)
    if i == k:
        out = out + _x(j).scale(b)
    if i == j:
        out = out + _x(k).scale(c)
    e = _levi_civita(i, j, k)
    if e and c0:
        out = out + SymPolynomial.constant(3, ComplexRational(0, c0 * e))
    return out


def table(kind, order: int, source: str = "tabulated") -> dict:
    """``{index tuple: polynomial}`` for all strings of the given order (2 or 3)."""
    kind = MapKind.parse(kind)
    consts = {"tabulated": TABULATED, "derived": DERIVED}[source]
    if kind not in consts:
        raise ValueError(f"no closed-form table for map {kind.value!r}")
    c2, deltas, c0 = consts[kind]
    if order == 2:
        return {(i, j): second_order(i, j, c2) for i, j in product(range(3), repeat=2)}
    if order == 3:
        return {(i, j, k): third_order(i, j, k, deltas, c0) for i, j, k in product(range(3), repeat=3)}
    raise ValueError("closed-form tables exist for orders 2 and 3")


def u1_sine_table() -> dict:
    """``X * X = X^2`` and ``X * X * X = X^3 + X/4`` for the sine map on U(1)."""
    x = SymPolynomial.variable(1, 0)
    return {(0, 0): x * x, (0, 0, 0): x * x * x + x.scale(F(1, 4))}


def max_coefficient_difference(a: SymPolynomial, b: SymPolynomial) -> float:
    """Largest ``|coefficient|`` of ``a - b``, as a float (0 iff equal)."""
    diff = a - b
    return max((abs(complex(c)) for _, c in diff.sorted_terms()), default=0.0)
