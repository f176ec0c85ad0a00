"""
Data models for experiment specs and reports.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..geometry.models import InductiveConfiguration, check_dimension
from ..regions.models import Region
from ..regions.serialization import region_from_dict

EXPERIMENTS = (
    "pairwise_density",
    "good_set_mass",
    "orthogonal_concentration",
    "concentration_trend",
    "tuple_containment",
    "mixed_sign_containment",
    "reverse_hc_check",
    "reverse_hc_trend",
    "ramsey_coloring_demo",
)

MIN_SAMPLES = 1000

# Criterion modes
EVIDENCE = "evidence"          # ci_low >= bound
NOT_REFUTED = "not_refuted"    # ci_high >= bound
MARGIN = "margin"              # estimate - bound >= -z * std_error
EXACT = "exact"                # identity or qualitative check


class SpecError(ValueError):
    """Raised when an experiment spec does not validate."""


@dataclass
class ExperimentSpec:
    """Inputs of one experiment run; regions are kept as JSON documents."""
    experiment: str
    samples: int
    seed: int
    n: Optional[int] = None
    regions: List[Dict[str, Any]] = field(default_factory=list)
    r: Optional[float] = None
    r_values: Optional[List[float]] = None
    confidence: float = 0.95
    subsphere_samples: Optional[int] = None
    n_grid: Optional[List[int]] = None
    mixed_sign_b: Optional[int] = None

    def validate(self, min_samples: int = MIN_SAMPLES) -> "ExperimentSpec":
        if self.experiment not in EXPERIMENTS:
            raise SpecError(f"Unknown experiment '{self.experiment}'; expected one of {', '.join(EXPERIMENTS)}")
        if self.samples < min_samples:
            raise SpecError(f"samples must be at least {min_samples}, got {self.samples}")
        if not 0.0 < self.confidence < 1.0:
            raise SpecError(f"confidence must lie in (0, 1), got {self.confidence}")
        if self.experiment.endswith("_trend"):
            if not self.n_grid:
                raise SpecError(f"{self.experiment} needs an n_grid")
            dims = list(self.n_grid)
        else:
            if self.n is None:
                raise SpecError(f"{self.experiment} needs n")
            dims = [self.n]
        try:
            for n in dims:
                check_dimension(n)
                self.materialize_regions(n)
        except ValueError as e:
            raise SpecError(str(e)) from e
        needs_r = {"pairwise_density", "good_set_mass", "reverse_hc_check", "reverse_hc_trend"}
        if self.experiment in needs_r and (self.r is None or not -1.0 < self.r < 1.0):
            raise SpecError(f"{self.experiment} needs r in (-1, 1), got {self.r}")
        needs_config = {"tuple_containment", "mixed_sign_containment", "ramsey_coloring_demo"}
        if self.experiment in needs_config:
            if not self.r_values:
                raise SpecError(f"{self.experiment} needs r_values")
            try:
                InductiveConfiguration(tuple(self.r_values))
            except ValueError as e:
                raise SpecError(str(e)) from e
        if self.experiment == "mixed_sign_containment":
            k = len(self.r_values) + 1
            if self.mixed_sign_b is None or not 0 <= self.mixed_sign_b <= k:
                raise SpecError(f"mixed_sign_containment needs 0 <= mixed_sign_b <= {k}")
        required_regions = {
            "pairwise_density": 2, "reverse_hc_check": 2, "reverse_hc_trend": 2,
        }.get(self.experiment, 1)
        if len(self.regions) < required_regions:
            raise SpecError(f"{self.experiment} needs {required_regions} region(s), got {len(self.regions)}")
        return self

    def materialize_regions(self, n: int) -> List[Region]:
        return [region_from_dict(doc, n) for doc in self.regions]

    @property
    def configuration(self) -> Optional[InductiveConfiguration]:
        return InductiveConfiguration(tuple(self.r_values)) if self.r_values else None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "experiment": self.experiment,
            "n": self.n,
            "regions": self.regions,
            "r": self.r,
            "r_values": self.r_values,
            "samples": self.samples,
            "seed": self.seed,
            "confidence": self.confidence,
            "subsphere_samples": self.subsphere_samples,
            "n_grid": self.n_grid,
            "mixed_sign_b": self.mixed_sign_b,
        }
        return {key: value for key, value in data.items() if value is not None}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentSpec":
        if not isinstance(data, dict):
            raise SpecError("Experiment spec must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise SpecError(f"Unknown spec fields: {', '.join(sorted(unknown))}")
        for key in ("experiment", "samples", "seed"):
            if key not in data:
                raise SpecError(f"Experiment spec is missing '{key}'")
        return cls(**data)


@dataclass
class BoundRecord:
    """A theoretical bound: formula identifier, its parameters and value."""
    formula: str
    params: Dict[str, Any]
    value: float

    def to_dict(self) -> Dict[str, Any]:
        return {"formula": self.formula, "params": self.params, "value": self.value}


@dataclass
class Criterion:
    name: str
    mode: str
    passed: bool
    assertable: bool
    detail: str = ""
    bound: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "mode": self.mode,
            "passed": self.passed,
            "assertable": self.assertable,
            "detail": self.detail,
            "bound": self.bound,
        }


@dataclass
class ExperimentReport:
    """Outcome of one experiment; runtime stays out of the JSON form."""
    experiment: str
    inputs: Dict[str, Any]
    estimate: float
    std_error: float
    ci_low: float
    ci_high: float
    samples: int
    bounds: List[BoundRecord] = field(default_factory=list)
    criteria: List[Criterion] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    runtime: float = field(default=0.0, compare=False)

    def bound(self, formula: str) -> Optional[BoundRecord]:
        for record in self.bounds:
            if record.formula == formula:
                return record
        return None

    def criterion(self, name: str) -> Optional[Criterion]:
        for item in self.criteria:
            if item.name == name:
                return item
        return None

    def assertable_failures(self) -> List[Criterion]:
        return [c for c in self.criteria if c.assertable and not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "inputs": self.inputs,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "samples": self.samples,
            "bounds": [b.to_dict() for b in self.bounds],
            "criteria": [c.to_dict() for c in self.criteria],
            "details": self.details,
            "rows": self.csv_rows(),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def csv_rows(self) -> List[Dict[str, Any]]:
        """Flat rows, one per (experiment, n)."""
        if self.rows:
            return self.rows
        primary = self.bounds[0] if self.bounds else None
        return [{
            "experiment": self.experiment,
            "n": self.inputs.get("n"),
            "estimate": self.estimate,
            "std_error": self.std_error,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "samples": self.samples,
            "bound_formula": primary.formula if primary else None,
            "bound_value": primary.value if primary else None,
        }]
