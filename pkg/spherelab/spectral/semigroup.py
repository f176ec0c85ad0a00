"""
A_r and the Poisson semigroup P_t acting on zonal coefficients, together with
the L2 and Dirichlet forms in the zonal normalization.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..geometry.models import UnitVector
from .gegenbauer import gegenbauer_table
from .zonal import ZonalFunction


@dataclass(frozen=True)
class SemigroupTime:
    """Time parameter t >= 0 of P_t; r = e^{-t}."""
    t: float

    def __post_init__(self):
        if not self.t >= 0.0:
            raise ValueError(f"Semigroup time must be nonnegative, got {self.t}")
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def from_r(cls, r: float) -> "SemigroupTime":
        if not 0.0 < r <= 1.0:
            raise ValueError(f"t = -log r needs r in (0, 1], got {r}")
        return cls(-math.log(r))

    @property
    def r(self) -> float:
        return math.exp(-self.t)


def _as_time(t: Union[SemigroupTime, float]) -> SemigroupTime:
    return t if isinstance(t, SemigroupTime) else SemigroupTime(t)


def apply_poisson(f: ZonalFunction, t: Union[SemigroupTime, float]) -> ZonalFunction:
    """P_t f: a_k -> e^{-kt} a_k."""
    t = _as_time(t)
    if t.t == 0.0:
        return f
    k = np.arange(f.degree + 1)
    return f.with_coefficients(np.exp(-k * t.t) * np.asarray(f.coefficients))


def apply_Ar_zonal(f: ZonalFunction, r: float) -> ZonalFunction:
    """A_r f: a_k -> G_k(r) a_k."""
    if not -1.0 < r < 1.0:
        raise ValueError(f"r must lie in (-1, 1), got {r}")
    mu = gegenbauer_table(f.degree, f.n, r)
    return f.with_coefficients(mu * np.asarray(f.coefficients))


def _check_pair(f: ZonalFunction, g: ZonalFunction):
    if not f.same_axis(g):
        raise ValueError("Zonal functions must share axis and dimension")


def l2_inner(f: ZonalFunction, g: ZonalFunction) -> float:
    """<f, g> in L2(sigma) = sum_k a_k b_k / c_{k,n}."""
    _check_pair(f, g)
    K = min(f.degree, g.degree)
    a = np.asarray(f.coefficients[: K + 1])
    b = np.asarray(g.coefficients[: K + 1])
    return float(np.sum(a * b / f.norm_factors()[: K + 1]))


def l2_norm(f: ZonalFunction) -> float:
    return math.sqrt(l2_inner(f, f))


def dirichlet_form(f: ZonalFunction, g: ZonalFunction) -> float:
    """E(f, g) = sum_k k a_k b_k / c_{k,n}."""
    _check_pair(f, g)
    K = min(f.degree, g.degree)
    a = np.asarray(f.coefficients[: K + 1])
    b = np.asarray(g.coefficients[: K + 1])
    k = np.arange(K + 1)
    return float(np.sum(k * a * b / f.norm_factors()[: K + 1]))


def l2_distance_Ar_Pt(f: ZonalFunction, r: float) -> float:
    """||A_r f - P_t f||_2 with t = -log r."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"Comparing A_r with P_t needs r in (0, 1), got {r}")
    diff = np.asarray(apply_Ar_zonal(f, r).coefficients) - np.asarray(
        apply_poisson(f, SemigroupTime.from_r(r)).coefficients
    )
    return l2_norm(f.with_coefficients(diff))


def poisson_kernel(x: UnitVector, y: UnitVector, r: float) -> float:
    """K_r(x, y) = (1 - r^2) / |x - r y|^n."""
    if x.dimension != y.dimension:
        raise ValueError("Dimension mismatch between x and y")
    return float(poisson_kernel_batch(x.coords, y.coords[None, :], r)[0])


def log_poisson_kernel_batch(x: np.ndarray, Y: np.ndarray, r: float) -> np.ndarray:
    """log K_r(x, y) for each row y of Y; finite where K_r itself over- or underflows."""
    if not -1.0 < r < 1.0:
        raise ValueError(f"Poisson kernel needs |r| < 1, got {r}")
    n = x.shape[0]
    dist = np.linalg.norm(x - r * np.atleast_2d(Y), axis=1)
    return np.log1p(-r * r) - n * np.log(dist)


def poisson_kernel_batch(x: np.ndarray, Y: np.ndarray, r: float) -> np.ndarray:
    """K_r(x, y) for each row y of Y."""
    return np.exp(log_poisson_kernel_batch(x, Y, r))


def reverse_hc_time(p: float, q: float, log_sobolev_constant: float = 2.0) -> float:
    """Smallest t with ||P_t f||_q >= ||f||_p for 0 < q < p < 1 and f >= 0."""
    if not 0.0 < q < p < 1.0:
        raise ValueError(f"Need 0 < q < p < 1, got p={p}, q={q}")
    return log_sobolev_constant / 4.0 * math.log((1.0 - q) / (1.0 - p))
