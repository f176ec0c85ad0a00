"""
Experiment harness for spherelab.
"""

from .models import (
    EXPERIMENTS,
    ExperimentSpec,
    ExperimentReport,
    BoundRecord,
    Criterion,
    SpecError,
)
from .bounds import BOUNDS, make_bound, recompute_bound
from .experiments import (
    ExperimentHarness,
    PartitionError,
    proportion_summary,
    negative_part_shrinking,
    run_experiment,
)
from .acceptance import AcceptanceResult, AcceptanceSuite, run_acceptance

__all__ = [
    "EXPERIMENTS",
    "ExperimentSpec",
    "ExperimentReport",
    "BoundRecord",
    "Criterion",
    "SpecError",
    "BOUNDS",
    "make_bound",
    "recompute_bound",
    "ExperimentHarness",
    "PartitionError",
    "proportion_summary",
    "negative_part_shrinking",
    "run_experiment",
    "AcceptanceResult",
    "AcceptanceSuite",
    "run_acceptance",
]
