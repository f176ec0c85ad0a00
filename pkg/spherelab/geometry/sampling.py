"""
Exact samplers for points, links and Gram-constrained configurations on S^{n-1}.

The batch functions work on plain arrays of shape (size, n) and are what the
Monte Carlo code uses; the UnitVector functions wrap them for single draws.
"""

from typing import List, Tuple

import numpy as np

from .cholesky import RANK_TOL, pivoted_cholesky
from .models import (
    GramMatrixError,
    GramSpec,
    RandomSource,
    UnitVector,
    as_generator,
    as_unit_vectors,
    check_dimension,
)

PROJECTION_TOL = 1e-8
MIN_LINK_NORM = 1e-14


def _check_link_parameter(r: float) -> float:
    if not -1.0 < r < 1.0:
        raise ValueError(f"Link inner product must lie in (-1, 1), got {r}")
    return float(r)


def sample_uniform_batch(n: int, size: int, rng: RandomSource) -> np.ndarray:
    """Draw `size` uniform points on S^{n-1} as rows of an array."""
    n = check_dimension(n)
    gen = as_generator(rng)
    points = gen.standard_normal((size, n))
    norms = np.linalg.norm(points, axis=1)
    # An all-zero Gaussian row has probability far below 1e-300; redraw it anyway.
    zero = norms == 0.0
    while np.any(zero):
        points[zero] = gen.standard_normal((int(zero.sum()), n))
        norms[zero] = np.linalg.norm(points[zero], axis=1)
        zero = norms == 0.0
    return points / norms[:, None]


def sample_uniform(n: int, rng: RandomSource) -> UnitVector:
    """Uniform point on S^{n-1}."""
    return UnitVector(sample_uniform_batch(n, 1, rng)[0])


def orthogonal_unit_batch(X: np.ndarray, rng: RandomSource) -> np.ndarray:
    """For each row x of X, a uniform unit vector in the complement of x."""
    gen = as_generator(rng)
    X = np.atleast_2d(X)
    Z = gen.standard_normal(X.shape)
    Z -= np.sum(Z * X, axis=1)[:, None] * X
    norms = np.linalg.norm(Z, axis=1)
    small = norms < MIN_LINK_NORM
    while np.any(small):
        redraw = gen.standard_normal((int(small.sum()), X.shape[1]))
        redraw -= np.sum(redraw * X[small], axis=1)[:, None] * X[small]
        Z[small] = redraw
        norms[small] = np.linalg.norm(redraw, axis=1)
        small = norms < MIN_LINK_NORM
    return Z / norms[:, None]


def sample_subsphere_batch(X: np.ndarray, r: float, rng: RandomSource) -> np.ndarray:
    """For each row x, a uniform point y on S_{x,r} = {y : x.y = r}."""
    r = _check_link_parameter(r)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Z = orthogonal_unit_batch(X, rng)
    return r * X + np.sqrt(1.0 - r * r) * Z


def sample_link_points(x: np.ndarray, r: float, size: int, rng: RandomSource) -> np.ndarray:
    """`size` independent uniform points on S_{x,r} for a single center x."""
    x = np.asarray(x, dtype=float)
    return sample_subsphere_batch(np.broadcast_to(x, (size, x.shape[0])), r, rng)


def sample_subsphere(x: UnitVector, r: float, rng: RandomSource) -> UnitVector:
    """Uniform point y on the (n-2)-subsphere {y : x.y = r}."""
    return UnitVector(sample_subsphere_batch(x.coords[None, :], r, rng)[0])


def haar_frame(n: int, k: int, size: int, rng: RandomSource) -> np.ndarray:
    """Haar-uniform orthonormal k-frames in R^n, shape (size, n, k).

    QR of a Gaussian matrix with each column's sign fixed by the sign of
    R's diagonal; the unsigned factor is not Haar distributed.
    """
    n = check_dimension(n)
    if k > n:
        raise ValueError(f"Cannot fit an orthonormal {k}-frame in R^{n}")
    gen = as_generator(rng)
    G = gen.standard_normal((size, n, k))
    Q, R = np.linalg.qr(G)
    signs = np.sign(np.diagonal(R, axis1=1, axis2=2))
    signs[signs == 0] = 1.0
    return Q * signs[:, None, :]


def configuration_factor(R: GramSpec, tol: float = RANK_TOL) -> np.ndarray:
    """Rows b_i with b_i . b_j = R_ij and unit norm."""
    B, _ = pivoted_cholesky(R.entries, tol=tol)
    norms = np.linalg.norm(B, axis=1)
    if np.any(norms == 0.0):
        raise GramMatrixError("Gram factor has a zero row")
    return B / norms[:, None]


def sample_configuration_batch(n: int, R: GramSpec, size: int, rng: RandomSource) -> np.ndarray:
    """Draw `size` tuples from Delta(n, R), shape (size, k, n)."""
    n = check_dimension(n)
    if R.k > n:
        raise ValueError(f"Cannot place {R.k} points with a full Gram matrix in R^{n}")
    B = configuration_factor(R)
    frames = haar_frame(n, B.shape[1], size, rng)
    # x_i = Q b_i for each frame Q
    return np.einsum("snm,km->skn", frames, B)


def sample_configuration(n: int, R: GramSpec, rng: RandomSource) -> List[UnitVector]:
    """One rotation-invariant draw of (x_1, ..., x_k) with Gram matrix R."""
    return as_unit_vectors(sample_configuration_batch(n, R, 1, rng)[0])


def project_to_link_batch(x1: np.ndarray, X: np.ndarray, c: float) -> np.ndarray:
    """Rows (x_i - c x_1)/||x_i - c x_1|| for each row x_i of X."""
    c = float(c)
    if abs(c) >= 1.0:
        raise ValueError(f"Degenerate link: |c| = {abs(c)} >= 1")
    X = np.atleast_2d(X)
    D = X - c * x1
    norms = np.linalg.norm(D, axis=1)
    if np.any(norms < MIN_LINK_NORM):
        raise ValueError("Projection onto the link is numerically zero")
    return D / norms[:, None]


def project_to_link(x1: UnitVector, xi: UnitVector, c: float) -> UnitVector:
    """Normalized component of xi orthogonal to x1, given x1.xi = c."""
    if abs(c) >= 1.0:
        raise ValueError(f"Degenerate link: |c| = {abs(c)} >= 1")
    if x1.dimension != xi.dimension:
        raise ValueError("Dimension mismatch between x1 and xi")
    gap = abs(x1.dot(xi) - c)
    if gap > PROJECTION_TOL:
        raise ValueError(f"x1.xi differs from c by {gap:.3e}")
    return UnitVector(project_to_link_batch(x1.coords, xi.coords[None, :], c)[0])


def link_inner_products(points: List[UnitVector]) -> Tuple[float, ...]:
    """Normalized inner products c_1, ..., c_{k-1} seen by recursive projection.

    At each level the first point is removed and the rest are projected onto
    its link; this requires the band pattern of an inductive configuration.
    """
    if len(points) < 2:
        raise ValueError("Need at least two points")
    current = list(points)
    values = []
    while len(current) >= 2:
        head = current[0]
        c = head.dot(current[1])
        values.append(c)
        if len(current) == 2:
            break
        current = [project_to_link(head, p, c) for p in current[1:]]
    return tuple(values)
