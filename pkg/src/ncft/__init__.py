"""Non-commutative Fourier transform on U(1) and SU(2).

Subpackages: :mod:`ncft.groups` (group core), :mod:`ncft.quantizer` (exact
star-products), :mod:`ncft.planewave`, :mod:`ncft.xform` (numerical transform)
and :mod:`ncft.cli`.
"""
from .groups import (
    SU2,
    SU2_STRUCTURE,
    U1,
    U1_STRUCTURE,
    BranchAmbiguityError,
    ChartError,
    SingularPointError,
    StructureConstants,
    bch,
    bch_p,
    exp_su2,
    haar_weight,
    log_su2,
    oplus_p,
    oplus_zeta_u1,
)
from .maps import MapKind
from .planewave import (
    PlaneWave,
    TruncationWarning,
    compatibility_check,
    evaluate,
    make_plane_wave,
    sigma,
    star_p_multiply,
    verify_defining_equation,
)
from .quantizer import (
    ComplexRational,
    PBWElement,
    SymPolynomial,
    dequantize,
    quantize,
    star_monomials,
    star_product,
)
from .xform import (
    AlgebraFunction,
    GroupFunction,
    PointMassFunction,
    QuadratureSpec,
    forward,
    inverse,
    parseval_check,
    radial_bump,
    roundtrip_error,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraFunction",
    "BranchAmbiguityError",
    "ChartError",
    "ComplexRational",
    "GroupFunction",
    "MapKind",
    "PBWElement",
    "PlaneWave",
    "PointMassFunction",
    "QuadratureSpec",
    "SU2",
    "SU2_STRUCTURE",
    "SingularPointError",
    "StructureConstants",
    "SymPolynomial",
    "TruncationWarning",
    "U1",
    "U1_STRUCTURE",
    "bch",
    "bch_p",
    "compatibility_check",
    "dequantize",
    "evaluate",
    "exp_su2",
    "forward",
    "haar_weight",
    "inverse",
    "log_su2",
    "make_plane_wave",
    "oplus_p",
    "oplus_zeta_u1",
    "parseval_check",
    "quantize",
    "radial_bump",
    "roundtrip_error",
    "sigma",
    "star_monomials",
    "star_p_multiply",
    "star_product",
    "verify_defining_equation",
]
