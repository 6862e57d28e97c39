"""Exact computer algebra for star-products on polynomial functions of g*."""
from .core import (
    casimir,
    dequantize,
    duflo_operator,
    duflo_operator_inverse,
    poisson_bracket,
    quantize,
    star_chain,
    star_monomials,
    star_product,
    star_table,
    structure_for,
    truncated_star_exponential,
)
from .pbw import PBWElement, pbw_multiply, symmetrize, symmetrize_inverse
from .polynomial import SymPolynomial
from .rational import ComplexRational, format_complex, format_rational

__all__ = [
    "ComplexRational",
    "PBWElement",
    "SymPolynomial",
    "casimir",
    "dequantize",
    "duflo_operator",
    "duflo_operator_inverse",
    "format_complex",
    "format_rational",
    "pbw_multiply",
    "poisson_bracket",
    "quantize",
    "star_chain",
    "star_monomials",
    "star_product",
    "star_table",
    "structure_for",
    "symmetrize",
    "symmetrize_inverse",
    "truncated_star_exponential",
]
