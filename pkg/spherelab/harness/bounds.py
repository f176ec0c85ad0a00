"""
Registry of theoretical bounds.

Every bound in a report is stored as (formula id, params) and recomputed
from them on demand; nothing is cached.
"""

from typing import Callable, Dict

from ..constants.derived import exponent_C, good_vector_exponent, pairwise_exponent
from .models import BoundRecord


def _pairwise_density(sigma_a: float, sigma_b: float, r: float) -> float:
    return (sigma_a * sigma_b) ** pairwise_exponent(r)


def _product_measure_fraction(sigma_a: float, sigma_b: float, factor: float) -> float:
    return factor * sigma_a * sigma_b


def _good_set(sigma: float, r: float) -> float:
    return 0.5 * sigma ** (2.0 * pairwise_exponent(r))


def _good_vector_threshold(sigma: float, r: float) -> float:
    return 0.5 * sigma ** good_vector_exponent(r)


def _inductive_reference(sigma: float, r_values: list) -> float:
    return sigma ** exponent_C(r_values)


def _orthogonal_simplex(sigma: float, k: int) -> float:
    return sigma ** k


def _reverse_hc(sigma_f: float, sigma_g: float, p: float) -> float:
    return (sigma_f * sigma_g) ** (1.0 / p)


BOUNDS: Dict[str, Callable[..., float]] = {
    "two_set_density_main_term": _pairwise_density,
    "orthogonal_pair_fraction": _product_measure_fraction,
    "good_set_mass": _good_set,
    "good_vector_threshold": _good_vector_threshold,
    "inductive_reference": _inductive_reference,
    "orthogonal_simplex_reference": _orthogonal_simplex,
    "reverse_hc_product_norm": _reverse_hc,
}


def make_bound(formula: str, **params) -> BoundRecord:
    """Evaluate a registered formula and record it with its parameters."""
    if formula not in BOUNDS:
        raise KeyError(f"Unknown bound formula '{formula}'")
    return BoundRecord(formula=formula, params=dict(params), value=float(BOUNDS[formula](**params)))


def recompute_bound(record: BoundRecord) -> float:
    """Recompute a recorded bound from its formula id and parameters."""
    return float(BOUNDS[record.formula](**record.params))
