"""
Region trees over S^{n-1}: caps and bands combined by union, intersection,
complement and antipode.

Membership is exact: thresholds compare directly, caps and bands are closed.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..geometry.models import UnitVector


class RegionError(ValueError):
    """Raised for structural region problems (dimension mismatch, unsupported analytic mode)."""


class MultiAxisRegionError(RegionError):
    """Raised when an analytic measure is requested for a region with several axes."""


class Region:
    """Base class of region tree nodes."""

    @property
    def dimension(self) -> Optional[int]:
        """Ambient dimension, or None for regions without an axis."""
        raise NotImplementedError

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        """Boolean membership of each row of `points`."""
        raise NotImplementedError

    def to_dict(self) -> Dict[str, Any]:
        raise NotImplementedError

    def check_dimension(self, n: int):
        dim = self.dimension
        if dim is not None and dim != n:
            raise RegionError(f"Region lives in R^{dim}, points live in R^{n}")

    def contains(self, x: UnitVector) -> bool:
        self.check_dimension(x.dimension)
        return bool(self.contains_batch(x.coords[None, :])[0])

    def _points(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        self.check_dimension(points.shape[1])
        return points


def _members_dimension(members) -> Optional[int]:
    dims = {m.dimension for m in members} - {None}
    if len(dims) > 1:
        raise RegionError(f"Members live in different dimensions: {sorted(dims)}")
    return dims.pop() if dims else None


@dataclass(frozen=True)
class Cap(Region):
    """{x : x.v >= t0}."""
    axis: UnitVector
    t0: float

    def __post_init__(self):
        if not -1.0 <= self.t0 <= 1.0:
            raise RegionError(f"Cap threshold must lie in [-1, 1], got {self.t0}")
        object.__setattr__(self, "t0", float(self.t0))

    @property
    def dimension(self) -> int:
        return self.axis.dimension

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        return self._points(points) @ self.axis.coords >= self.t0

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "cap", "axis": self.axis.coords.tolist(), "t0": self.t0}


@dataclass(frozen=True)
class Band(Region):
    """{x : lo <= x.v <= hi}."""
    axis: UnitVector
    lo: float
    hi: float

    def __post_init__(self):
        if not -1.0 <= self.lo <= self.hi <= 1.0:
            raise RegionError(f"Band needs -1 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))

    @property
    def dimension(self) -> int:
        return self.axis.dimension

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        t = self._points(points) @ self.axis.coords
        return (t >= self.lo) & (t <= self.hi)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "band", "axis": self.axis.coords.tolist(), "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class Union(Region):
    members: Tuple[Region, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        _members_dimension(self.members)

    @property
    def dimension(self) -> Optional[int]:
        return _members_dimension(self.members)

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        points = self._points(points)
        result = np.zeros(points.shape[0], dtype=bool)
        for member in self.members:
            result |= member.contains_batch(points)
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "union", "members": [m.to_dict() for m in self.members]}


@dataclass(frozen=True)
class Intersection(Region):
    members: Tuple[Region, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        _members_dimension(self.members)

    @property
    def dimension(self) -> Optional[int]:
        return _members_dimension(self.members)

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        points = self._points(points)
        result = np.ones(points.shape[0], dtype=bool)
        for member in self.members:
            result &= member.contains_batch(points)
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "intersection", "members": [m.to_dict() for m in self.members]}


@dataclass(frozen=True)
class Complement(Region):
    region: Region

    @property
    def dimension(self) -> Optional[int]:
        return self.region.dimension

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        return ~self.region.contains_batch(points)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "complement", "region": self.region.to_dict()}


@dataclass(frozen=True)
class Antipode(Region):
    """Preimage of a region under x -> -x."""
    region: Region

    @property
    def dimension(self) -> Optional[int]:
        return self.region.dimension

    def contains_batch(self, points: np.ndarray) -> np.ndarray:
        return self.region.contains_batch(-np.atleast_2d(np.asarray(points, dtype=float)))

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "antipode", "region": self.region.to_dict()}


def empty_region() -> Region:
    return Union(())


def full_sphere() -> Region:
    return Complement(Union(()))
