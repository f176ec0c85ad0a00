"""
JSON documents for region trees.

Axes are coordinate lists or {"basis": i}; caps carry "t0" or a target
"measure". Both shorthand forms need the dimension n and materialize into
the concrete form.
"""

import json
from typing import Any, Dict, Optional, Union as TypingUnion

from ..geometry.models import UnitVector
from .measure import find_threshold_for_measure
from .models import Antipode, Band, Cap, Complement, Intersection, Region, RegionError, Union


def _axis(value: Any, n: Optional[int]) -> UnitVector:
    if isinstance(value, dict):
        if "basis" not in value:
            raise RegionError(f"Axis object needs a 'basis' index, got {value}")
        if n is None:
            raise RegionError("A basis axis needs the dimension n")
        index = int(value["basis"])
        if not 0 <= index < n:
            raise RegionError(f"Basis index {index} out of range for n={n}")
        return UnitVector.basis(n, index)
    axis = UnitVector(value)
    if n is not None and axis.dimension != n:
        raise RegionError(f"Axis has dimension {axis.dimension}, expected n={n}")
    return axis


def region_from_dict(data: Dict[str, Any], n: Optional[int] = None) -> Region:
    """Build a region tree from its JSON form."""
    if not isinstance(data, dict) or "type" not in data:
        raise RegionError(f"Region node needs a 'type' field, got {data!r}")
    kind = data["type"]
    try:
        if kind == "cap":
            axis = _axis(data["axis"], n)
            if "t0" in data:
                return Cap(axis, data["t0"])
            if "measure" in data:
                target = float(data["measure"])
                if target <= 0.0:
                    return Cap(axis, 1.0)
                if target >= 1.0:
                    return Cap(axis, -1.0)
                return Cap(axis, find_threshold_for_measure(axis.dimension, target))
            raise RegionError("Cap needs 't0' or 'measure'")
        if kind == "band":
            return Band(_axis(data["axis"], n), data["lo"], data["hi"])
        if kind == "union":
            return Union(tuple(region_from_dict(m, n) for m in data.get("members", [])))
        if kind == "intersection":
            return Intersection(tuple(region_from_dict(m, n) for m in data.get("members", [])))
        if kind == "complement":
            return Complement(region_from_dict(data["region"], n))
        if kind == "antipode":
            return Antipode(region_from_dict(data["region"], n))
    except KeyError as e:
        raise RegionError(f"Region node '{kind}' is missing field {e}") from e
    except ValueError as e:
        if isinstance(e, RegionError):
            raise
        raise RegionError(f"Invalid '{kind}' node: {e}") from e
    raise RegionError(f"Unknown region type '{kind}'")


def region_to_json(region: Region, indent: Optional[int] = None) -> str:
    return json.dumps(region.to_dict(), indent=indent)


def region_from_json(text: TypingUnion[str, bytes], n: Optional[int] = None) -> Region:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise RegionError(f"Malformed region JSON: {e}") from e
    return region_from_dict(data, n)
