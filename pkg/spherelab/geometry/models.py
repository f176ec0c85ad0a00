"""
Data models for sphere geometry.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

NORM_TOL = 1e-12
PSD_FLOOR = -1e-10
MIN_DIMENSION = 3


class GramMatrixError(ValueError):
    """Raised when a Gram matrix is not a valid correlation matrix."""


def check_dimension(n: int) -> int:
    """Validate an ambient dimension."""
    if int(n) != n or n < MIN_DIMENSION:
        raise ValueError(f"Invalid dimension n={n}; need an integer n >= {MIN_DIMENSION}")
    return int(n)


@dataclass(frozen=True)
class UnitVector:
    """A point on S^{n-1}."""
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 1:
            raise ValueError(f"UnitVector needs a 1-d array, got shape {coords.shape}")
        check_dimension(coords.shape[0])
        norm = float(np.linalg.norm(coords))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"UnitVector norm is {norm!r}, not 1 within {NORM_TOL}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "UnitVector":
        """Normalize an arbitrary nonzero vector."""
        arr = np.asarray(values, dtype=float)
        norm = np.linalg.norm(arr)
        if norm == 0.0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(arr / norm)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> "UnitVector":
        """Standard basis vector e_index in R^n."""
        coords = np.zeros(check_dimension(n))
        coords[index] = 1.0
        return cls(coords)

    @property
    def dimension(self) -> int:
        return self.coords.shape[0]

    def dot(self, other: "UnitVector") -> float:
        return float(self.coords @ other.coords)

    def __neg__(self) -> "UnitVector":
        return UnitVector(-self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnitVector):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())


@dataclass(frozen=True)
class GramSpec:
    """Target pairwise inner-product matrix of a k-point configuration."""
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise GramMatrixError(f"Gram matrix must be square, got shape {entries.shape}")
        if not np.array_equal(entries, entries.T):
            raise GramMatrixError("Gram matrix is not symmetric")
        if not np.all(np.diag(entries) == 1.0):
            raise GramMatrixError("Gram matrix must have unit diagonal")
        off = entries[~np.eye(entries.shape[0], dtype=bool)]
        if off.size and np.any(np.abs(off) >= 1.0):
            raise GramMatrixError("Off-diagonal entries must lie in (-1, 1)")
        floor = float(np.linalg.eigvalsh(entries).min())
        if floor < PSD_FLOOR:
            raise GramMatrixError(f"Gram matrix is not positive semidefinite (min eigenvalue {floor:.3e})")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, k: int) -> "GramSpec":
        return cls(np.eye(k))

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min())


@dataclass(frozen=True)
class InductiveConfiguration:
    """Band-pattern configuration R(r_1, ..., r_{k-1})."""
    r_values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(r) for r in self.r_values)
        if not values:
            raise ValueError("An inductive configuration needs at least one r value")
        for r in values:
            if not -1.0 < r < 1.0:
                raise ValueError(f"r value {r} outside (-1, 1)")
        object.__setattr__(self, "r_values", values)

    @classmethod
    def simplex(cls, k: int, r: float) -> "InductiveConfiguration":
        """k points with all pairwise inner products equal to r."""
        if k < 2:
            raise ValueError("A simplex needs k >= 2")
        return cls(tuple([r] * (k - 1)))

    @property
    def k(self) -> int:
        return len(self.r_values) + 1

    def band_matrix(self) -> np.ndarray:
        """Entry (i, j) is r_{min(i, j)} off the diagonal, 1 on it."""
        k = self.k
        idx = np.arange(k)
        low = np.minimum.outer(idx, idx)
        padded = np.append(np.asarray(self.r_values), 1.0)
        matrix = padded[low]
        np.fill_diagonal(matrix, 1.0)
        return matrix

    def to_dict(self) -> dict:
        return {"r_values": list(self.r_values)}

    @classmethod
    def from_dict(cls, data: dict) -> "InductiveConfiguration":
        if "r_values" not in data:
            raise ValueError("Configuration JSON needs an 'r_values' list")
        return cls(tuple(data["r_values"]))


@dataclass
class RandomStream:
    """Seeded, indexable source of random draws.

    Identical (seed, stream_index, key) always yields the same draw sequence;
    child streams are derived through numpy's SeedSequence spawn keys.
    """
    seed: int
    stream_index: int = 0
    key: Tuple[int, ...] = ()
    _generator: Optional[np.random.Generator] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream_index < 0:
            raise ValueError("stream_index must be nonnegative")

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            sequence = np.random.SeedSequence(
                entropy=int(self.seed), spawn_key=(int(self.stream_index),) + tuple(self.key)
            )
            self._generator = np.random.Generator(np.random.PCG64(sequence))
        return self._generator

    def child(self, index: int) -> "RandomStream":
        """Independent substream for chunk or worker `index`."""
        return RandomStream(self.seed, self.stream_index, self.key + (int(index),))


RandomSource = Union[RandomStream, np.random.Generator]


def as_generator(rng: RandomSource) -> np.random.Generator:
    """Accept either a RandomStream or a bare numpy Generator."""
    if isinstance(rng, RandomStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"Expected RandomStream or numpy Generator, got {type(rng).__name__}")


def as_unit_vectors(points: np.ndarray) -> List[UnitVector]:
    """Wrap rows of an array as UnitVectors."""
    return [UnitVector(row) for row in np.asarray(points)]
