"""
Measures of regions: analytic latitude integrals for single-axis regions,
Monte Carlo with Wilson intervals for everything else.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc

from ..geometry.models import UnitVector, check_dimension
from ..geometry.sampling import sample_uniform_batch
from ..utils.logging import get_logger
from ..utils.montecarlo import MonteCarloRunner
from ..utils.stats import wilson_half_width
from .models import (
    Antipode,
    Band,
    Cap,
    Complement,
    Intersection,
    MultiAxisRegionError,
    Region,
    RegionError,
    Union,
    full_sphere,
)

logger = get_logger(__name__)

Interval = Tuple[float, float]

ANALYTIC = "analytic"
MONTE_CARLO = "monte_carlo"
AUTO = "auto"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    method: str
    std_error: float = 0.0
    samples: int = 0

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"Measure {self.value} outside [0, 1]")

    def to_dict(self) -> dict:
        return {"value": self.value, "method": self.method, "std_error": self.std_error, "samples": self.samples}


def cap_measure(n: int, t0: float) -> float:
    """sigma({x : x.v >= t0}) on S^{n-1}."""
    n = check_dimension(n)
    if not -1.0 <= t0 <= 1.0:
        raise ValueError(f"Cap threshold must lie in [-1, 1], got {t0}")
    if t0 < 0.0:
        return 1.0 - cap_measure(n, -t0)
    return float(0.5 * betainc((n - 1) / 2.0, 0.5, 1.0 - t0 * t0))


def interval_measure(n: int, interval: Interval) -> float:
    """sigma({x : a <= x.v <= b})."""
    a, b = interval
    return max(0.0, cap_measure(n, a) - cap_measure(n, b))


def find_threshold_for_measure(n: int, target: float) -> float:
    """t0 with cap_measure(n, t0) = target."""
    if not 0.0 < target < 1.0:
        raise ValueError(f"Target measure must lie in (0, 1), got {target}")
    n = check_dimension(n)
    return float(brentq(lambda t: cap_measure(n, t) - target, -1.0, 1.0, xtol=1e-15))


def cap_with_measure(n: int, target: float, axis_index: int = 0) -> Cap:
    """Cap about e_{axis_index} with measure `target`."""
    return Cap(UnitVector.basis(n, axis_index), find_threshold_for_measure(n, target))


def latitude_partition(n: int, k: int, axis_index: int = 0) -> List[Region]:
    """k half-open latitude bands about e_{axis_index}, each of measure 1/k.

    Bands are [t_j, t_{j-1}) with t_0 = 1, so every point lies in exactly one.
    """
    if k < 1:
        raise ValueError("A partition needs at least one part")
    if k == 1:
        return [full_sphere()]
    axis = UnitVector.basis(n, axis_index)
    thresholds = [find_threshold_for_measure(n, j / k) for j in range(1, k)]
    parts: List[Region] = [Cap(axis, thresholds[0])]
    for upper, lower in zip(thresholds[:-1], thresholds[1:]):
        parts.append(Intersection((Cap(axis, lower), Complement(Cap(axis, upper)))))
    parts.append(Complement(Cap(axis, thresholds[-1])))
    return parts


# Interval algebra on [-1, 1]. Endpoints are treated as measure zero.

def _normalize(intervals: List[Interval]) -> List[Interval]:
    merged: List[Interval] = []
    for a, b in sorted(i for i in intervals if i[0] < i[1]):
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged


def _complement(intervals: List[Interval]) -> List[Interval]:
    result, start = [], -1.0
    for a, b in intervals:
        result.append((start, a))
        start = b
    result.append((start, 1.0))
    return _normalize(result)


def _intersect(left: List[Interval], right: List[Interval]) -> List[Interval]:
    return _normalize([(max(a, c), min(b, d)) for a, b in left for c, d in right])


def _mirror(intervals: List[Interval]) -> List[Interval]:
    return _normalize([(-b, -a) for a, b in intervals])


class _AxisReducer:
    """Reduces a region tree to disjoint t-intervals about one axis (up to sign)."""

    def __init__(self):
        self.axis: Optional[np.ndarray] = None

    def _orient(self, axis: UnitVector) -> float:
        coords = axis.coords
        if self.axis is None:
            self.axis = coords
            return 1.0
        if np.array_equal(coords, self.axis):
            return 1.0
        if np.array_equal(coords, -self.axis):
            return -1.0
        raise MultiAxisRegionError("Analytic measure needs a single-axis region; use monte_carlo mode")

    def reduce(self, region: Region) -> List[Interval]:
        if isinstance(region, Cap):
            primitive = [(region.t0, 1.0)]
            return primitive if self._orient(region.axis) > 0 else _mirror(primitive)
        if isinstance(region, Band):
            primitive = [(region.lo, region.hi)]
            return primitive if self._orient(region.axis) > 0 else _mirror(primitive)
        if isinstance(region, Union):
            return _normalize([i for m in region.members for i in self.reduce(m)])
        if isinstance(region, Intersection):
            result = [(-1.0, 1.0)]
            for member in region.members:
                result = _intersect(result, self.reduce(member))
            return result
        if isinstance(region, Complement):
            return _complement(self.reduce(region.region))
        if isinstance(region, Antipode):
            return _mirror(self.reduce(region.region))
        raise RegionError(f"Unknown region node {type(region).__name__}")


def latitude_intervals(region: Region) -> List[Interval]:
    """Disjoint intervals of x.v describing a single-axis region."""
    return _AxisReducer().reduce(region)


def analytic_measure(region: Region, n: int) -> float:
    n = check_dimension(n)
    region.check_dimension(n)
    value = sum(interval_measure(n, i) for i in latitude_intervals(region))
    return float(min(1.0, max(0.0, value)))


def monte_carlo_measure(region: Region, n: int, samples: int, rng,
                        runner: Optional[MonteCarloRunner] = None,
                        confidence: float = 0.95) -> MeasureResult:
    """Hit fraction over `samples` uniform points, Wilson half-width as std_error."""
    n = check_dimension(n)
    region.check_dimension(n)
    if samples is None or samples < 1 or rng is None:
        raise ValueError("Monte Carlo measure needs a positive sample count and a random stream")
    runner = runner or MonteCarloRunner()

    def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
        return region.contains_batch(sample_uniform_batch(n, size, gen)).astype(float)

    tally = runner.tally(kernel, samples, rng, desc="measure")
    hits = int(round(float(tally.total)))
    return MeasureResult(
        value=hits / samples,
        method=MONTE_CARLO,
        std_error=wilson_half_width(hits, samples, confidence),
        samples=samples,
    )


def measure(region: Region, n: int, mode: str = ANALYTIC, samples: Optional[int] = None, rng=None,
            runner: Optional[MonteCarloRunner] = None, confidence: float = 0.95) -> MeasureResult:
    """sigma(region) analytically, by Monte Carlo, or analytically when possible ("auto")."""
    if mode == ANALYTIC:
        return MeasureResult(value=analytic_measure(region, n), method=ANALYTIC)
    if mode == MONTE_CARLO:
        return monte_carlo_measure(region, n, samples, rng, runner, confidence)
    if mode == AUTO:
        try:
            return MeasureResult(value=analytic_measure(region, n), method=ANALYTIC)
        except MultiAxisRegionError as e:
            logger.debug(f"Falling back to Monte Carlo measure: {e}")
            return monte_carlo_measure(region, n, samples, rng, runner, confidence)
    raise ValueError(f"Unknown measure mode '{mode}'")
