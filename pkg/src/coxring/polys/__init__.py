"""Exact sparse polynomials over Q and F_p."""

from .fields import DEFAULT_PRIME, GF, QQ, CoefficientError, Field, field_from_name, is_prime
from .orders import MonomialOrder
from .parsing import ParseError, UnknownVariableError, parse_polynomial, parse_polynomials
from .ring import (
    PolyRing,
    Polynomial,
    RingMismatchError,
    ZeroPolynomialError,
    exact_divide,
    format_polynomial,
)

__all__ = [
    "DEFAULT_PRIME",
    "GF",
    "QQ",
    "CoefficientError",
    "Field",
    "field_from_name",
    "is_prime",
    "MonomialOrder",
    "ParseError",
    "UnknownVariableError",
    "parse_polynomial",
    "parse_polynomials",
    "PolyRing",
    "Polynomial",
    "RingMismatchError",
    "ZeroPolynomialError",
    "exact_divide",
    "format_polynomial",
]
