"""
Zonal functions x -> sum_k a_k G_k(x.v).
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from ..geometry.models import UnitVector
from .gegenbauer import gegenbauer_table, harmonic_dimension


@dataclass(frozen=True)
class ZonalFunction:
    """Coefficients a_0..a_K on the zonal representatives G_k(x.v).

    G_k(1) = 1, so f(v) = sum a_k; and a_0 is the mean of f over sigma.
    The L2-normalized harmonic is Y_k = sqrt(c_{k,n}) G_k.
    """
    axis: UnitVector
    coefficients: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(a) for a in self.coefficients)
        if not coeffs:
            raise ValueError("A zonal function needs at least the constant coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("Zonal coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def constant(cls, axis: UnitVector, value: float) -> "ZonalFunction":
        return cls(axis, (value,))

    @classmethod
    def from_harmonics(cls, axis: UnitVector, harmonic_coefficients: Sequence[float]) -> "ZonalFunction":
        """Build f = sum_k b_k Y_k from L2-normalized harmonic coefficients."""
        n = axis.dimension
        coeffs = [b * np.sqrt(harmonic_dimension(k, n)) for k, b in enumerate(harmonic_coefficients)]
        return cls(axis, tuple(coeffs))

    @property
    def n(self) -> int:
        return self.axis.dimension

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def mean(self) -> float:
        return self.coefficients[0]

    def harmonic_coefficients(self) -> np.ndarray:
        """b_k = a_k / sqrt(c_{k,n})."""
        return np.asarray(self.coefficients) / np.sqrt(self.norm_factors())

    def norm_factors(self) -> np.ndarray:
        """c_{k,n} for each stored degree; <G_k, G_k> = 1/c_{k,n}."""
        return np.array([float(harmonic_dimension(k, self.n)) for k in range(self.degree + 1)])

    def profile(self, t) -> np.ndarray:
        """h(t) = sum_k a_k G_k(t)."""
        table = gegenbauer_table(self.degree, self.n, t)
        return np.tensordot(np.asarray(self.coefficients), table, axes=1)

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """f at each row of `points`."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.n:
            raise ValueError(f"Points have dimension {points.shape[1]}, function lives on n={self.n}")
        t = np.clip(points @ self.axis.coords, -1.0, 1.0)
        return self.profile(t)

    def __call__(self, x: Union[UnitVector, np.ndarray]):
        if isinstance(x, UnitVector):
            return float(self.evaluate_batch(x.coords[None, :])[0])
        return self.evaluate_batch(x)

    def with_coefficients(self, coefficients: Sequence[float]) -> "ZonalFunction":
        return ZonalFunction(self.axis, tuple(coefficients))

    def scaled(self, c: float) -> "ZonalFunction":
        return self.with_coefficients([c * a for a in self.coefficients])

    def same_axis(self, other: "ZonalFunction") -> bool:
        return self.n == other.n and self.axis == other.axis

    def padded(self, K: int) -> np.ndarray:
        """Coefficients as an array of length K+1, zero-filled."""
        out = np.zeros(max(K, self.degree) + 1)
        out[: self.degree + 1] = self.coefficients
        return out
