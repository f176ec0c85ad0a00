"""
Entropy, p-quasi-norms and the log-Sobolev ratio.

Zonal inputs are integrated with latitude quadrature; Regions and general
point functions go through Monte Carlo.
"""

from typing import Optional

import numpy as np
from scipy.special import xlogy

from ..regions.measure import measure
from ..regions.models import Region
from ..utils.montecarlo import MonteCarloRunner
from .montecarlo import as_point_function, sphere_mean_mc
from .quadrature import LatitudeQuadrature
from .semigroup import dirichlet_form
from .zonal import ZonalFunction


def _quadrature_for(f: ZonalFunction, quadrature: Optional[LatitudeQuadrature]) -> LatitudeQuadrature:
    if quadrature is None:
        return LatitudeQuadrature(f.n)
    if quadrature.n != f.n:
        raise ValueError(f"Quadrature is for n={quadrature.n}, function lives on n={f.n}")
    return quadrature


def _entropy_from_means(mean_f: float, mean_flogf: float) -> float:
    return float(mean_flogf - xlogy(mean_f, mean_f))


def entropy(f: ZonalFunction, quadrature: Optional[LatitudeQuadrature] = None,
            power: float = 1.0) -> float:
    """Ent(f^power) = E[g log g] - E[g] log E[g] under sigma, with g = f^power.

    g log g is taken as 0 where g = 0. Raises if g is negative at any node.
    """
    if not isinstance(f, ZonalFunction):
        raise TypeError("entropy integrates zonal functions; use entropy_mc for point functions")
    quad = _quadrature_for(f, quadrature)

    def g(t: np.ndarray) -> np.ndarray:
        with np.errstate(invalid="ignore"):
            values = f.profile(t) ** power
        if np.any(np.isnan(values)) or np.any(values < 0):
            raise ValueError("entropy needs a nonnegative function; negative value at a quadrature node")
        return values

    def glogg(t: np.ndarray) -> np.ndarray:
        values = g(t)
        return xlogy(values, values)

    mean_g = quad.integrate(g)
    mean_glogg = quad.integrate(glogg)
    return _entropy_from_means(mean_g, mean_glogg)


def entropy_mc(f, n: int, samples: int, rng, runner: Optional[MonteCarloRunner] = None) -> float:
    """Monte Carlo Ent(f) for a nonnegative point function."""
    func = as_point_function(f)

    def pair(points: np.ndarray) -> np.ndarray:
        values = func(points)
        if np.any(values < 0):
            raise ValueError("entropy needs a nonnegative function; negative sample encountered")
        return np.column_stack([values, xlogy(values, values)])

    means, _ = sphere_mean_mc(pair, n, samples, rng, runner=runner)
    return _entropy_from_means(float(means[0]), float(means[1]))


def log_sobolev_ratio(f: ZonalFunction, quadrature: Optional[LatitudeQuadrature] = None) -> float:
    """Ent(f^2) / E(f, f); the Poisson semigroup keeps this at most 2."""
    energy = dirichlet_form(f, f)
    if energy <= 0.0:
        raise ValueError("Dirichlet form vanishes; f is constant")
    return entropy(f, quadrature, power=2.0) / energy


def quasi_norm(f, p: float, quadrature: Optional[LatitudeQuadrature] = None, *,
               n: Optional[int] = None, samples: Optional[int] = None, rng=None,
               runner: Optional[MonteCarloRunner] = None) -> float:
    """(int f^p dsigma)^{1/p} for nonnegative f and p != 0.

    ZonalFunction: latitude quadrature. Region (indicator): sigma(A)^{1/p},
    with the measure taken analytically when the region allows it. Any other
    point function: Monte Carlo over `samples` draws.
    """
    p = float(p)
    if p == 0.0:
        raise ValueError("quasi_norm is undefined at p = 0")

    if isinstance(f, ZonalFunction):
        quad = _quadrature_for(f, quadrature)

        def powered(t: np.ndarray) -> np.ndarray:
            values = f.profile(t)
            _check_sign(values, p)
            return values ** p

        return quad.integrate(powered) ** (1.0 / p)

    if isinstance(f, Region):
        if n is None:
            raise ValueError("quasi_norm of a region needs the dimension n")
        if p < 0:
            raise ValueError("p < 0 needs a strictly positive function; indicators vanish off the region")
        result = measure(f, n, mode="auto", samples=samples, rng=rng, runner=runner)
        return result.value ** (1.0 / p)

    if n is None or samples is None or rng is None:
        raise ValueError("quasi_norm of a point function needs n, samples and rng")
    func = as_point_function(f)

    def powered_points(points: np.ndarray) -> np.ndarray:
        values = func(points)
        _check_sign(values, p)
        return values ** p

    mean, _ = sphere_mean_mc(powered_points, n, samples, rng, runner=runner)
    return float(mean) ** (1.0 / p)


def _check_sign(values: np.ndarray, p: float):
    if p < 0 and np.any(values <= 0):
        raise ValueError("p < 0 needs a strictly positive function")
    if np.any(values < 0):
        raise ValueError("quasi_norm needs a nonnegative function")
