"""
Exponent calculus for inductive configurations.
"""

from .models import DerivedConstants
from .derived import (
    InvalidConfigurationError,
    f_link,
    c_sequence,
    simplex_config,
    simplex_closed_form,
    check_diameter_condition,
    exponent_C,
    exponent_eps,
    growth_factors,
    gram_from_inductive,
    derive_constants,
    pairwise_exponent,
    good_vector_exponent,
)

__all__ = [
    "DerivedConstants",
    "InvalidConfigurationError",
    "f_link",
    "c_sequence",
    "simplex_config",
    "simplex_closed_form",
    "check_diameter_condition",
    "exponent_C",
    "exponent_eps",
    "growth_factors",
    "gram_from_inductive",
    "derive_constants",
    "pairwise_exponent",
    "good_vector_exponent",
]
