"""
Monte Carlo application of A_r to point-evaluable functions.

A point function takes an array of points of shape (m, n) and returns m
values. ZonalFunction and Region objects are accepted wherever a point
function is expected.
"""

from typing import Callable, Optional, Tuple

import numpy as np

from ..geometry.models import UnitVector, check_dimension
from ..geometry.sampling import sample_link_points, sample_subsphere_batch, sample_uniform_batch
from ..utils.montecarlo import MonteCarloRunner
from .zonal import ZonalFunction

PointFunction = Callable[[np.ndarray], np.ndarray]


def as_point_function(f) -> PointFunction:
    """Vectorized evaluator for a ZonalFunction, a Region or a callable."""
    if isinstance(f, ZonalFunction):
        return f.evaluate_batch
    contains_batch = getattr(f, "contains_batch", None)
    if contains_batch is not None:
        return lambda points: contains_batch(points).astype(float)
    if callable(f):
        return f
    raise TypeError(f"Cannot evaluate {type(f).__name__} at points")


def _check_samples(samples: int) -> int:
    if samples is None or samples < 1:
        raise ValueError(f"Monte Carlo needs at least one sample, got {samples}")
    return int(samples)


def apply_Ar_mc(f, x: UnitVector, r: float, samples: int, rng,
                runner: Optional[MonteCarloRunner] = None) -> Tuple[float, float]:
    """Estimate (A_r f)(x) = E_{y on S_{x,r}} f(y); returns (mean, std_error)."""
    samples = _check_samples(samples)
    func = as_point_function(f)
    runner = runner or MonteCarloRunner()
    center = x.coords

    def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
        return func(sample_link_points(center, r, size, gen))

    tally = runner.tally(kernel, samples, rng, desc="A_r")
    return float(tally.mean), float(tally.std_error)


def inner_product_mc(f, g, r: float, n: int, samples: int, rng,
                     runner: Optional[MonteCarloRunner] = None) -> Tuple[float, float]:
    """Estimate E_{x.y=r}[f(x) g(y)] = <f, A_r g>; returns (mean, std_error)."""
    n = check_dimension(n)
    samples = _check_samples(samples)
    f_eval, g_eval = as_point_function(f), as_point_function(g)
    runner = runner or MonteCarloRunner()

    def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
        X = sample_uniform_batch(n, size, gen)
        Y = sample_subsphere_batch(X, r, gen)
        return f_eval(X) * g_eval(Y)

    tally = runner.tally(kernel, samples, rng, desc="<f, A_r g>")
    return float(tally.mean), float(tally.std_error)


def sphere_mean_mc(f, n: int, samples: int, rng,
                   runner: Optional[MonteCarloRunner] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Mean and standard error over sigma of a (possibly vector-valued) point function."""
    n = check_dimension(n)
    samples = _check_samples(samples)
    func = as_point_function(f)
    runner = runner or MonteCarloRunner()

    def kernel(size: int, gen: np.random.Generator) -> np.ndarray:
        return func(sample_uniform_batch(n, size, gen))

    tally = runner.tally(kernel, samples, rng, desc="sigma mean")
    return tally.mean, tally.std_error
