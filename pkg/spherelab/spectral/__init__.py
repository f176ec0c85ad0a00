"""
Spectral module for spherelab.
"""

from .gegenbauer import (
    EigenTable,
    gegenbauer_eval,
    gegenbauer_table,
    gegenbauer_moment_oracle,
    moment_bound_check,
    harmonic_dimension,
    eigenvalue_table,
    eigenvalue_deviation_table,
    decay_slope,
)
from .quadrature import LatitudeQuadrature
from .zonal import ZonalFunction
from .semigroup import (
    SemigroupTime,
    apply_poisson,
    apply_Ar_zonal,
    dirichlet_form,
    l2_inner,
    l2_norm,
    l2_distance_Ar_Pt,
    log_poisson_kernel_batch,
    poisson_kernel,
    poisson_kernel_batch,
    reverse_hc_time,
)
from .montecarlo import apply_Ar_mc, inner_product_mc, sphere_mean_mc, as_point_function
from .functionals import entropy, entropy_mc, quasi_norm, log_sobolev_ratio

__all__ = [
    "EigenTable",
    "gegenbauer_eval",
    "gegenbauer_table",
    "gegenbauer_moment_oracle",
    "moment_bound_check",
    "harmonic_dimension",
    "eigenvalue_table",
    "eigenvalue_deviation_table",
    "decay_slope",
    "LatitudeQuadrature",
    "ZonalFunction",
    "SemigroupTime",
    "apply_poisson",
    "apply_Ar_zonal",
    "dirichlet_form",
    "l2_inner",
    "l2_norm",
    "l2_distance_Ar_Pt",
    "log_poisson_kernel_batch",
    "poisson_kernel",
    "poisson_kernel_batch",
    "reverse_hc_time",
    "apply_Ar_mc",
    "inner_product_mc",
    "sphere_mean_mc",
    "as_point_function",
    "entropy",
    "entropy_mc",
    "quasi_norm",
    "log_sobolev_ratio",
]
