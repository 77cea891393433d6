"""Cox rings of hypersurfaces in toric varieties.

Two routes are offered: an iterative intersection of localizations for
arbitrary graded presentations (:mod:`coxring.localize`) and a closed-form
presentation for general hypersurfaces meeting a single codimension-2
irrelevant component (:mod:`coxring.hyperpres`).
"""

from .graded import DegreeVector, GradingMatrix, degree_of, parse_degree
from .hyperpres import (
    CoxPresentation,
    HypothesisError,
    anticanonical_presentation,
    corollaryC_case,
    presentation_by_adjunction,
    rank2_surface_presentation,
    scroll_type,
    split_multiplicity,
    theoremB_presentation,
)
from .ideals import Ideal, eliminate, ideal_intersection, ideal_quotient, krull_dimension, saturation
from .localize import (
    Certificate,
    PresentedRing,
    adjoin_fraction,
    certify_run,
    cr2_certificate,
    intersect_localizations,
    verify_presentation,
)
from .polys import GF, QQ, MonomialOrder, PolyRing, Polynomial, parse_polynomial
from .toric import Rank2Params, ToricAmbient, ambient_from_ample, rank2_smooth

__version__ = "0.1.0"

__all__ = [
    "DegreeVector",
    "GradingMatrix",
    "degree_of",
    "parse_degree",
    "CoxPresentation",
    "HypothesisError",
    "anticanonical_presentation",
    "corollaryC_case",
    "presentation_by_adjunction",
    "rank2_surface_presentation",
    "scroll_type",
    "split_multiplicity",
    "theoremB_presentation",
    "Ideal",
    "eliminate",
    "ideal_intersection",
    "ideal_quotient",
    "krull_dimension",
    "saturation",
    "Certificate",
    "PresentedRing",
    "adjoin_fraction",
    "certify_run",
    "cr2_certificate",
    "intersect_localizations",
    "verify_presentation",
    "GF",
    "QQ",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "parse_polynomial",
    "Rank2Params",
    "ToricAmbient",
    "ambient_from_ample",
    "rank2_smooth",
]
