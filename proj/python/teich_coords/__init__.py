"""Shear/decoration and lambda-length charts on triangulated hyperbolic surfaces."""

from ._core import (
    DomainError,
    HypothesisViolation,
    InvalidTriangulation,
    LaminationError,
    ParseError,
    Surface,
    TeichError,
    closed_form_inverse,
    decoration_param,
    endpoint_positions,
    lamination_coordinates,
    neighborhood_radii,
    oracle_psi_forward,
    psi_forward,
    psi_inverse,
    radius_from_decoration,
    verify,
)

__all__ = [
    "DomainError",
    "HypothesisViolation",
    "InvalidTriangulation",
    "LaminationError",
    "ParseError",
    "Surface",
    "TeichError",
    "closed_form_inverse",
    "decoration_param",
    "endpoint_positions",
    "lamination_coordinates",
    "neighborhood_radii",
    "oracle_psi_forward",
    "psi_forward",
    "psi_inverse",
    "radius_from_decoration",
    "verify",
]
