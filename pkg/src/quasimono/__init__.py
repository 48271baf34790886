"""Exact computer algebra for quasi-monomial actions of finite groups on
rational function fields: field towers, rational function arithmetic,
integer matrix groups, reduction to faithful actions, norm-residue symbols,
rationality decisions, and a machine-checked corpus of birational
identities."""

from .fields import (
    Adjunction,
    Field,
    FieldAut,
    FieldDescriptor,
    FieldElem,
    field_build,
    prime_field,
    quadratic,
    rationals,
)
from .polys import MultiPoly, poly_gcd
from .ratfunc import (
    RatFunc,
    Substitution,
    format_ratfunc,
    parse_constant,
    parse_ratfunc,
    rf_arith,
    rf_evaluate,
    rf_substitute,
)

__version__ = "0.1.0"

__all__ = [
    "Adjunction",
    "Field",
    "FieldAut",
    "FieldDescriptor",
    "FieldElem",
    "MultiPoly",
    "RatFunc",
    "Substitution",
    "field_build",
    "format_ratfunc",
    "parse_constant",
    "parse_ratfunc",
    "poly_gcd",
    "prime_field",
    "quadratic",
    "rationals",
    "rf_arith",
    "rf_evaluate",
    "rf_substitute",
    "__version__",
]
