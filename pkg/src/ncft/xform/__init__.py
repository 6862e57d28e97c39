"""Numerical transform between functions on the group and on the dual Lie algebra."""
from .functions import AlgebraFunction, GroupFunction, PointMassFunction, bump, radial_bump, zero_function
from .quadrature import (
    AliasingWarning,
    ConfigError,
    CutoffWarning,
    QuadratureSpec,
    QuadratureWarning,
    group_grid,
)
from .transform import (
    algebra_inner_product,
    algebra_inner_product_radial,
    apply_sigma,
    convolution_duality_check,
    delta_star_kernel,
    forward,
    forward_pointmass,
    forward_radial,
    group_inner_product,
    inverse,
    inverse_radial,
    parseval_check,
    plain_inner_product,
    roundtrip_error,
    roundtrip_values,
    sample_forward,
    smeared_delta,
    smeared_delta_check,
    translation_duality_check,
    u1_fourier_of_constant,
)

__all__ = [
    "AlgebraFunction",
    "AliasingWarning",
    "ConfigError",
    "CutoffWarning",
    "GroupFunction",
    "PointMassFunction",
    "QuadratureSpec",
    "QuadratureWarning",
    "algebra_inner_product",
    "algebra_inner_product_radial",
    "apply_sigma",
    "bump",
    "convolution_duality_check",
    "delta_star_kernel",
    "forward",
    "forward_pointmass",
    "forward_radial",
    "group_grid",
    "group_inner_product",
    "inverse",
    "inverse_radial",
    "parseval_check",
    "plain_inner_product",
    "radial_bump",
    "roundtrip_error",
    "roundtrip_values",
    "sample_forward",
    "smeared_delta",
    "smeared_delta_check",
    "translation_duality_check",
    "u1_fourier_of_constant",
    "zero_function",
]
