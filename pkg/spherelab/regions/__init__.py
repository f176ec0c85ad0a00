"""
Regions module for spherelab.
"""

from .models import (
    Region,
    RegionError,
    MultiAxisRegionError,
    Cap,
    Band,
    Union,
    Intersection,
    Complement,
    Antipode,
    empty_region,
    full_sphere,
)
from .measure import (
    MeasureResult,
    cap_measure,
    measure,
    find_threshold_for_measure,
    cap_with_measure,
    latitude_partition,
    latitude_intervals,
)
from .serialization import region_from_dict, region_from_json, region_to_json

__all__ = [
    "Region",
    "RegionError",
    "MultiAxisRegionError",
    "Cap",
    "Band",
    "Union",
    "Intersection",
    "Complement",
    "Antipode",
    "empty_region",
    "full_sphere",
    "MeasureResult",
    "cap_measure",
    "measure",
    "find_threshold_for_measure",
    "cap_with_measure",
    "latitude_partition",
    "latitude_intervals",
    "region_from_dict",
    "region_from_json",
    "region_to_json",
]
