"""Exact computations with (sigma, tau)-derivations of Laurent polynomial rings,
the hom-Lie algebras they generate, and their one-dimensional central extensions."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import DEFAULT_PARAMS, ParamSet, Scalar, parse_scalar, q_number, subs, sym_q_number
from .laurent import LaurentPoly, exact_div, gcd_up_to_unit, unit_normalize
from .twist import MonomialEndo
from .derivation import TwistedDerivation, canonical_generator, delta_of
from .homlie import CENTRAL, HomLieElement
from .bracket import BracketContext, bracket, six_term_jacobi
from .families import FamilyParams, family_bracket, family_context, integer_eigenvectors
from .extension import (
    build_extension,
    check_cocycle_conditions,
    triviality_check,
    virasoro_algebra,
    virasoro_cocycle,
)

__all__ = [
    "DEFAULT_PARAMS",
    "ParamSet",
    "Scalar",
    "parse_scalar",
    "q_number",
    "sym_q_number",
    "subs",
    "LaurentPoly",
    "exact_div",
    "gcd_up_to_unit",
    "unit_normalize",
    "MonomialEndo",
    "TwistedDerivation",
    "canonical_generator",
    "delta_of",
    "CENTRAL",
    "HomLieElement",
    "BracketContext",
    "bracket",
    "six_term_jacobi",
    "FamilyParams",
    "family_bracket",
    "family_context",
    "integer_eigenvectors",
    "build_extension",
    "check_cocycle_conditions",
    "triviality_check",
    "virasoro_algebra",
    "virasoro_cocycle",
]
