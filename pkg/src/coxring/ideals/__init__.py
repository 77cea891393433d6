"""Groebner bases and ideal operations."""

from .groebner import Engine, ExponentOverflowError, groebner, is_groebner_basis
from .ideal import (
    DimensionReport,
    GroebnerBasis,
    Ideal,
    NonSquarefreeError,
    OrderMismatchError,
    ZeroDivisorInputError,
    eliminate,
    ideal_intersection,
    ideal_quotient,
    krull_dimension,
    minimal_homogeneous_generators,
    minimal_transversals,
    monomial_dimension,
    monomial_minimal_primes,
    normal_form,
    saturation,
    saturation_exponent,
)

__all__ = [
    "Engine",
    "ExponentOverflowError",
    "groebner",
    "is_groebner_basis",
    "DimensionReport",
    "GroebnerBasis",
    "Ideal",
    "NonSquarefreeError",
    "OrderMismatchError",
    "ZeroDivisorInputError",
    "eliminate",
    "ideal_intersection",
    "ideal_quotient",
    "krull_dimension",
    "minimal_homogeneous_generators",
    "minimal_transversals",
    "monomial_dimension",
    "monomial_minimal_primes",
    "normal_form",
    "saturation",
    "saturation_exponent",
]
