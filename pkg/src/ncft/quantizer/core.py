"""Quantization maps Pol(g*) -> U(g), their inverses and induced star-products."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..groups import SU2_STRUCTURE, U1_STRUCTURE, StructureConstants
from ..maps import MapKind
from .jets import (
    Jet,
    asin_over_sqrt_coeffs,
    reciprocal_coeffs,
    sinc_sqrt_coeffs,
    sinhc_sqrt_coeffs,
    two_sin_half_coeffs,
)
from .pbw import PBWElement, _accumulate, envelope, symmetrize, symmetrize_inverse, triangular_inverse
from .polynomial import SymPolynomial
from .rational import I, ComplexRational

def structure_for(kind: MapKind) -> StructureConstants:
    return U1_STRUCTURE if MapKind.parse(kind).group == "u1" else SU2_STRUCTURE


def _check_dim(kind: MapKind, dim: int):
    if dim != kind.dim:
        raise ValueError(f"map {kind.value!r} acts on polynomials in {kind.dim} variables, got {dim}")


def _laplacian_series(f: SymPolynomial, coeffs) -> SymPolynomial:
    out = SymPolynomial.zero(f.dim)
    term = f
    for c in coeffs:
        if not term:
            break
        out = out + term.scale(c)
        term = term.laplacian()
    return out


def duflo_operator(f: SymPolynomial) -> SymPolynomial:
    """Apply ``j^(1/2)(d) = sum_n Laplacian^n / (2n+1)!`` (su(2) only)."""
    if f.dim != 3:
        raise ValueError("the Duflo factor is implemented for su(2) only")
    return _laplacian_series(f, sinhc_sqrt_coeffs(f.degree() // 2 + 1))


def duflo_operator_inverse(f: SymPolynomial) -> SymPolynomial:
    if f.dim != 3:
        raise ValueError("the Duflo factor is implemented for su(2) only")
    return _laplacian_series(f, reciprocal_coeffs(sinhc_sqrt_coeffs(f.degree() // 2 + 1)))


def word(exps) -> tuple:
    """Generator indices of a PBW monomial, left to right."""
    return tuple(i for i, e in enumerate(exps) for _ in range(e))


_pw_cache: dict = {}


def _pw_image(kind: MapKind, exps: tuple) -> dict:
    key = (kind, exps)
    hit = _pw_cache.get(key)
    if hit is None:
        hit = star_monomials(kind, word(exps)).terms
        _pw_cache[key] = hit
    return hit


def quantize(kind, f: SymPolynomial) -> PBWElement:
    kind = MapKind.parse(kind)
    _check_dim(kind, f.dim)
    structure = structure_for(kind)
    if kind in (MapKind.SYMMETRIC, MapKind.U1_STANDARD):
        return symmetrize(f, structure)
    if kind is MapKind.DUFLO:
        return symmetrize(duflo_operator(f), structure)
    terms = triangular_inverse(f.terms, lambda m: _pw_image(kind, m), f.dim)
    return PBWElement._raw(envelope(structure), terms)


def dequantize(kind, u: PBWElement) -> SymPolynomial:
    kind = MapKind.parse(kind)
    if u.structure != structure_for(kind):
        raise ValueError(f"element does not belong to the enveloping algebra of {kind.value!r}")
    if kind in (MapKind.SYMMETRIC, MapKind.U1_STANDARD):
        return symmetrize_inverse(u)
    if kind is MapKind.DUFLO:
        return duflo_operator_inverse(symmetrize_inverse(u))
    out: dict = {}
    for m, c in u.terms.items():
        _accumulate(out, _pw_image(kind, m), c)
    return SymPolynomial._raw(kind.dim, out)


def star_product(kind, f: SymPolynomial, g: SymPolynomial) -> SymPolynomial:
    """``Q^-1(Q(f) Q(g))``, exactly."""
    kind = MapKind.parse(kind)
    return dequantize(kind, quantize(kind, f) * quantize(kind, g))


def star_chain(kind, indices) -> SymPolynomial:
    """``X_{i1} * X_{i2} * ... * X_{in}`` through repeated :func:`star_product`."""
    kind = MapKind.parse(kind)
    out = SymPolynomial.constant(kind.dim, 1)
    for i in indices:
        out = star_product(kind, out, SymPolynomial.variable(kind.dim, i))
    return out


def star_monomials(kind, indices) -> SymPolynomial:
    """Star-product of coordinate functions from the composed plane wave.

    With ``g_a = exp(i t_a X^_{i_a})`` the product ``g_1 ... g_n`` is formed as
    a square-free jet in the ``t_a``; its plane wave ``eta * exp(i zeta.X)`` is
    expanded with the map's closed forms, and
    ``X_{i1} * ... * X_{in} = (-i)^n d^n E / dt_1 ... dt_n`` at ``t = 0``.
    """
    kind = MapKind.parse(kind)
    indices = tuple(indices)
    n, d = len(indices), kind.dim
    if any(not 0 <= i < d for i in indices):
        raise ValueError(f"axis indices must lie in 0..{d - 1}")
    if n == 0:
        return SymPolynomial.constant(d, 1)

    eta = Jet.constant(n, Fraction(1))
    if kind.group == "su2":
        q0 = Jet.constant(n, Fraction(1))
        qv = [Jet(n), Jet(n), Jet(n)]
        for a, i in enumerate(indices):
            g0 = Jet.constant(n, Fraction(1))
            gv = [Jet.variable(n, a) if j == i else Jet(n) for j in range(3)]
            q0, qv = _quat_mul_jets(q0, qv, g0, gv)
        if kind is MapKind.FLM:
            zeta = qv
        else:
            s = sum((v * v for v in qv), Jet(n))
            factor = s.compose(asin_over_sqrt_coeffs(n // 2 + 1))
            zeta = [v * factor for v in qv]
            if kind is MapKind.DUFLO:
                r2 = sum((z * z for z in zeta), Jet(n))
                eta = r2.compose(reciprocal_coeffs(sinc_sqrt_coeffs(n // 2 + 1)))
    else:
        theta = sum((Jet.variable(n, a) for a in range(n)), Jet(n))
        zeta = [theta if kind is MapKind.U1_STANDARD else theta.compose(two_sin_half_coeffs(n))]

    phase = Jet(n)
    for j, z in enumerate(zeta):
        phase = phase + z * SymPolynomial.variable(d, j).scale(I)
    plane_wave = eta * phase.exp(SymPolynomial.constant(d, 1))
    top = plane_wave.top()
    if not isinstance(top, SymPolynomial):
        top = SymPolynomial.constant(d, top)
    return top.scale((-I) ** n)


def _quat_mul_jets(a0, av, b0, bv):
    dot = av[0] * bv[0] + av[1] * bv[1] + av[2] * bv[2]
    cross = [
        av[1] * bv[2] - av[2] * bv[1],
        av[2] * bv[0] - av[0] * bv[2],
        av[0] * bv[1] - av[1] * bv[0],
    ]
    s = a0 * b0 - dot
    v = [a0 * bv[j] + b0 * av[j] - cross[j] for j in range(3)]
    return s, v


def poisson_bracket(f: SymPolynomial, g: SymPolynomial, structure: StructureConstants | None = None):
    """Lie-Poisson bracket ``{f, g} = c_ij^k d_i f d_j g X_k``."""
    if structure is None:
        structure = SU2_STRUCTURE if f.dim == 3 else U1_STRUCTURE
    d = structure.dim
    if f.dim != d or g.dim != d:
        raise ValueError("polynomial dimension does not match the structure constants")
    out = SymPolynomial.zero(d)
    df = [f.derivative(i) for i in range(d)]
    dg = [g.derivative(j) for j in range(d)]
    for i, j, k in product(range(d), repeat=3):
        c = structure.c[i][j][k]
        if c and df[i] and dg[j]:
            out = out + (df[i] * dg[j] * SymPolynomial.variable(d, k)).scale(Fraction(c))
    return out


def index_strings(dim: int, max_degree: int):
    for n in range(1, max_degree + 1):
        yield from product(range(dim), repeat=n)


def star_table(kind, max_degree: int) -> list[dict]:
    """Every star-monomial up to ``max_degree`` in a JSON-ready layout."""
    kind = MapKind.parse(kind)
    rows = []
    for idx in index_strings(kind.dim, max_degree):
        poly = star_chain(kind, idx)
        rows.append(
            {
                "map": kind.value,
                "monomial": "*".join(f"X{i + 1}" for i in idx),
                "result-terms": [
                    {"exponents": list(m), "re": _q(c.re), "im": _q(c.im)} for m, c in poly.sorted_terms()
                ],
                "result": str(poly),
            }
        )
    return rows


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def casimir(dim: int = 3) -> SymPolynomial:
    return sum((SymPolynomial.variable(dim, i) ** 2 for i in range(dim)), SymPolynomial.zero(dim))


def truncated_star_exponential(kind, k, order: int) -> SymPolynomial:
    """``sum_{n<=order} (i k.X)^{*n} / n!`` with exact rational ``k``."""
    kind = MapKind.parse(kind)
    d = kind.dim
    kx = SymPolynomial(d, {tuple(1 if j == i else 0 for j in range(d)): Fraction(ki) for i, ki in enumerate(k)})
    base = quantize(kind, kx.scale(I))
    term = PBWElement.one(structure_for(kind))
    total = term
    for n in range(1, order + 1):
        term = (term * base) * Fraction(1, n)
        total = total + term
    return total


__all__ = [
    "ComplexRational",
    "casimir",
    "dequantize",
    "duflo_operator",
    "duflo_operator_inverse",
    "poisson_bracket",
    "quantize",
    "star_chain",
    "star_monomials",
    "star_product",
    "star_table",
]
