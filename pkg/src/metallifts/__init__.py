"""Exact symbolic verification of metallic structures on tangent bundles."""

from .numfield import MetallicParams, QuadScalar, make_params
from .symexpr import Chart, RatFunc, parse_expr

__all__ = [
    "Chart",
    "MetallicParams",
    "QuadScalar",
    "RatFunc",
    "make_params",
    "parse_expr",
]

__version__ = "0.1.0"
