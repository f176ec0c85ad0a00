"""
Latitude quadrature for zonal integrands on S^{n-1}.

For a zonal function f(x) = h(x.v), the integral over sigma reduces to a
one-dimensional integral of h(t) against the density proportional to
(1 - t^2)^{(n-3)/2} on [-1, 1].
"""

from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from ..geometry.models import check_dimension
from ..utils.logging import get_logger

logger = get_logger(__name__)

START_ORDER = 32


@lru_cache(maxsize=128)
def latitude_rule(n: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and normalized weights of an order-point latitude rule.

    Gauss-Jacobi with alpha = beta = (n-3)/2 absorbs the latitude density
    exactly. When its weights overflow (large n), Gauss-Legendre with the
    density folded into the weights in log space is used instead.
    """
    n = check_dimension(n)
    alpha = (n - 3) / 2.0
    with np.errstate(all="ignore"):
        nodes, weights = roots_jacobi(order, alpha, alpha)
    if np.all(np.isfinite(weights)) and np.all(weights >= 0) and weights.sum() > 0:
        weights = weights / weights.sum()
    else:
        logger.debug(f"Gauss-Jacobi weights overflow for n={n}, order={order}; folding the density")
        nodes, base = roots_legendre(order)
        log_w = np.log(base) + alpha * np.log1p(-nodes * nodes)
        weights = np.exp(log_w - log_w.max())
        weights /= weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


class LatitudeQuadrature:
    """Adaptive latitude quadrature: doubles the order until two agree."""

    def __init__(self, n: int, tol: float = 1e-12, max_order: int = 4096,
                 start_order: int = START_ORDER):
        self.n = check_dimension(n)
        self.tol = tol
        self.max_order = max_order
        self.start_order = start_order
        self.order_used: Optional[int] = None
        self.logger = get_logger(__name__)

    @classmethod
    def from_config(cls, n: int, config) -> "LatitudeQuadrature":
        return cls(n, tol=config.quadrature_tol, max_order=config.quadrature_max_order)

    def rule(self, order: int) -> Tuple[np.ndarray, np.ndarray]:
        return latitude_rule(self.n, order)

    def integrate(self, integrand: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integral of integrand(t) against the normalized latitude density."""
        order = self.start_order
        nodes, weights = self.rule(order)
        previous = float(weights @ integrand(nodes))
        while order * 2 <= self.max_order:
            order *= 2
            nodes, weights = self.rule(order)
            current = float(weights @ integrand(nodes))
            if abs(current - previous) <= self.tol * max(1.0, abs(current)):
                self.order_used = order
                return current
            previous = current
        self.order_used = order
        self.logger.warning(
            f"Latitude quadrature did not reach tol={self.tol} by order {order} (n={self.n})"
        )
        return previous
