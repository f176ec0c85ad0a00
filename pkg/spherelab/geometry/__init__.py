"""
Sphere geometry module for spherelab.
"""

from .models import (
    UnitVector,
    GramSpec,
    GramMatrixError,
    InductiveConfiguration,
    RandomStream,
    as_generator,
    check_dimension,
)
from .cholesky import pivoted_cholesky
from .sampling import (
    sample_uniform,
    sample_uniform_batch,
    sample_subsphere,
    sample_subsphere_batch,
    sample_link_points,
    sample_configuration,
    sample_configuration_batch,
    haar_frame,
    project_to_link,
    project_to_link_batch,
    link_inner_products,
)

__all__ = [
    "UnitVector",
    "GramSpec",
    "GramMatrixError",
    "InductiveConfiguration",
    "RandomStream",
    "as_generator",
    "check_dimension",
    "pivoted_cholesky",
    "sample_uniform",
    "sample_uniform_batch",
    "sample_subsphere",
    "sample_subsphere_batch",
    "sample_link_points",
    "sample_configuration",
    "sample_configuration_batch",
    "haar_frame",
    "project_to_link",
    "project_to_link_batch",
    "link_inner_products",
]
