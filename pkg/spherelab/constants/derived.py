"""
Recursive constants of inductive configurations.

c_1 = r_1 and c_i = (f_{c_{i-1}} o ... o f_{c_1})(r_i), with f_{c_1} applied
first; C_R and eps_R are the exponent and threshold exponent built from them.
"""

import math
from typing import List, Tuple

from ..geometry.models import GramMatrixError, GramSpec, InductiveConfiguration
from .models import DerivedConstants

DIAMETER_TOL = 1e-12


class InvalidConfigurationError(ValueError):
    """Raised for configurations that violate the diameter condition or degenerate."""


def f_link(c: float, r: float) -> float:
    """Inner product after projecting onto the link at inner product c."""
    if abs(c) >= 1.0:
        raise ValueError(f"f_c needs |c| < 1, got c={c}")
    return (r - c * c) / (1.0 - c * c)


def pairwise_exponent(r: float) -> float:
    """Exponent 1/(1-|r|) of the two-set density bound."""
    return 1.0 / (1.0 - abs(r))


def good_vector_exponent(r: float) -> float:
    """Exponent (1+|r|)/(1-|r|) in the good-vector threshold."""
    return (1.0 + abs(r)) / (1.0 - abs(r))


def _as_config(config) -> InductiveConfiguration:
    if isinstance(config, InductiveConfiguration):
        return config
    if isinstance(config, dict):
        return InductiveConfiguration.from_dict(config)
    return InductiveConfiguration(tuple(config))


def c_sequence(config) -> Tuple[float, ...]:
    """Compute (c_1, ..., c_{k-1}).

    Raises InvalidConfigurationError when an intermediate c_j (j <= k-2)
    leaves (-1, 1), since f_{c_j} is then undefined.
    """
    config = _as_config(config)
    values: List[float] = []
    for i, r in enumerate(config.r_values):
        value = r
        for c in values:
            value = f_link(c, value)
        if i < len(config.r_values) - 1 and abs(value) >= 1.0 - DIAMETER_TOL:
            raise InvalidConfigurationError(
                f"c_{i + 1} = {value!r} is degenerate; later points cannot be placed"
            )
        values.append(value)
    return tuple(values)


def simplex_config(k: int, r: float) -> InductiveConfiguration:
    """k-point simplex with all pairwise inner products r."""
    return InductiveConfiguration.simplex(k, r)


def simplex_closed_form(k: int, r: float) -> Tuple[float, ...]:
    """c_i = r/(1+(i-1)r) for the k-point simplex."""
    return tuple(r / (1.0 + (i - 1) * r) for i in range(1, k))


def check_diameter_condition(config) -> Tuple[bool, str]:
    """Whether the last edge avoids the diameter of its intersection subsphere."""
    config = _as_config(config)
    try:
        cs = c_sequence(config)
    except InvalidConfigurationError as e:
        return False, f"degenerate intermediate link: {e}"
    last = cs[-1]
    if last <= -1.0 + DIAMETER_TOL:
        return False, (
            f"diameter condition violated: c_{{k-1}} = {last!r} <= -1, so the last "
            f"edge spans a diameter of the intersection subsphere"
        )
    return True, f"diameter condition holds: c_{{k-1}} = {last!r} > -1"


def _require_valid(config) -> Tuple[float, ...]:
    valid, reason = check_diameter_condition(config)
    if not valid:
        raise InvalidConfigurationError(reason)
    return c_sequence(config)


def growth_factors(cs) -> List[float]:
    """(1+|c_j|)/(1-|c_j|) for each c_j."""
    return [(1.0 + abs(c)) / (1.0 - abs(c)) for c in cs]


def exponent_C(config) -> float:
    """C_R = sum_i 2/(1-|c_i|) prod_{j<i} (1+|c_j|)/(1-|c_j|)."""
    cs = _require_valid(config)
    factors = growth_factors(cs)
    terms = []
    running = 1.0
    for c, factor in zip(cs, factors):
        terms.append(2.0 / (1.0 - abs(c)) * running)
        running *= factor
    return math.fsum(terms)


def exponent_eps(config) -> float:
    """eps_R = prod_i (1-|c_i|)/(1+|c_i|)."""
    cs = _require_valid(config)
    return math.prod((1.0 - abs(c)) / (1.0 + abs(c)) for c in cs)


def gram_from_inductive(config) -> GramSpec:
    """Band-pattern Gram matrix R(r_1, ..., r_{k-1})."""
    config = _as_config(config)
    try:
        return GramSpec(config.band_matrix())
    except GramMatrixError as e:
        raise GramMatrixError(f"r values {list(config.r_values)} are inconsistent: {e}") from e


def derive_constants(config) -> DerivedConstants:
    """All derived constants, with C_R and eps_R left empty when invalid."""
    config = _as_config(config)
    valid, reason = check_diameter_condition(config)
    try:
        cs = c_sequence(config)
    except InvalidConfigurationError:
        cs = ()
    if valid:
        return DerivedConstants(
            r_values=config.r_values,
            c_sequence=cs,
            C_R=exponent_C(config),
            eps_R=exponent_eps(config),
            valid=True,
            reason=reason,
        )
    return DerivedConstants(
        r_values=config.r_values, c_sequence=cs, C_R=None, eps_R=None, valid=False, reason=reason
    )
