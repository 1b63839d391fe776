"""Spectral radius via Aluthge iterates, power limits and similarity orbits.

Matrices are square complex numpy arrays. Result records come back as dicts.
"""

from ._core import (
    InvalidArgument,
    InvalidInput,
    NotPsdError,
    NumericalFailure,
    ParseError,
    RangeError,
    SpecradError,
    aluthge,
    eigenvalues,
    estimate,
    fov_boundary,
    generate,
    iterate_trace,
    minimize_orbit,
    normaloid,
    numerical_radius,
    operator_norm,
    peripheral_angle,
    polar,
    spectral_radius,
)

__all__ = [
    "InvalidArgument",
    "InvalidInput",
    "NotPsdError",
    "NumericalFailure",
    "ParseError",
    "RangeError",
    "SpecradError",
    "aluthge",
    "eigenvalues",
    "estimate",
    "fov_boundary",
    "generate",
    "iterate_trace",
    "minimize_orbit",
    "normaloid",
    "numerical_radius",
    "operator_norm",
    "peripheral_angle",
    "polar",
    "spectral_radius",
]
