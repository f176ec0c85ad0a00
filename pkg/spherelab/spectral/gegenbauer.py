"""
Normalized Gegenbauer polynomials G_k with G_k(1) = 1.

G_k(r) is the eigenvalue of the averaging operator A_r on degree-k spherical
harmonics of S^{n-1}. Values come from the normalized three-term recurrence;
an exact moment expansion serves as an independent oracle.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.special import comb

from ..geometry.models import check_dimension

ArrayLike = Union[float, Sequence[float], np.ndarray]

T_TOL = 1e-12
MAX_ORACLE_DEGREE = 60


def _check_degree(k: int) -> int:
    if int(k) != k or k < 0:
        raise ValueError(f"Degree must be a nonnegative integer, got {k}")
    return int(k)


def _check_argument(t: ArrayLike) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)):
        raise ValueError("Gegenbauer argument contains NaN")
    if np.any(np.abs(arr) > 1.0 + T_TOL):
        raise ValueError(f"Gegenbauer argument must lie in [-1, 1], got max |t| = {np.max(np.abs(arr))}")
    return np.clip(arr, -1.0, 1.0)


def recurrence_coefficients(k: int, n: int) -> Tuple[float, float, float]:
    """(a, b, d) with G_k = (a t G_{k-1} - b G_{k-2}) / d for k >= 2."""
    return float(2 * k + n - 4), float(k - 1), float(n + k - 3)


def gegenbauer_table(K: int, n: int, t: ArrayLike) -> np.ndarray:
    """G_0(t), ..., G_K(t) stacked along the first axis."""
    K = _check_degree(K)
    n = check_dimension(n)
    t = _check_argument(t)
    table = np.empty((K + 1,) + t.shape)
    table[0] = 1.0
    if K >= 1:
        table[1] = t
    for k in range(2, K + 1):
        a, b, d = recurrence_coefficients(k, n)
        table[k] = (a * t * table[k - 1] - b * table[k - 2]) / d
    return table


def gegenbauer_eval(k: int, n: int, t: ArrayLike) -> Union[float, np.ndarray]:
    """Normalized Gegenbauer value G_k(t); vectorized over t."""
    k = _check_degree(k)
    values = gegenbauer_table(k, n, t)[k]
    if np.ndim(values) == 0:
        return float(values)
    return values


def even_moment(a: int, n: int) -> Fraction:
    """E[X_1^{2a}] for X uniform on S^{n-2}, as an exact fraction."""
    if int(a) != a or a < 0:
        raise ValueError(f"Moment order must be a nonnegative integer, got {a}")
    n = check_dimension(n)
    value = Fraction(1)
    for j in range(int(a)):
        value *= Fraction(2 * j + 1, n - 1 + 2 * j)
    return value


def gegenbauer_moment_oracle(k: int, n: int, t: float) -> float:
    """E[(t + i X_1 sqrt(1 - t^2))^k] by binomial expansion over even powers.

    Evaluated in exact rational arithmetic from the float t, so the only
    rounding is the final conversion.
    """
    k = _check_degree(k)
    if k > MAX_ORACLE_DEGREE:
        raise ValueError(f"Moment oracle is limited to k <= {MAX_ORACLE_DEGREE}, got {k}")
    n = check_dimension(n)
    t = float(_check_argument(t))
    tq = Fraction(t)
    s2 = 1 - tq * tq
    total = Fraction(0)
    for a in range(k // 2 + 1):
        term = Fraction(int(comb(k, 2 * a, exact=True))) * tq ** (k - 2 * a) * s2 ** a * even_moment(a, n)
        total += -term if a % 2 else term
    return float(total)


def moment_bound_check(a: int, n: int) -> Tuple[float, float]:
    """Exact E[X_1^{2a}] on S^{n-2} and the bound (2a/(n-4))^a."""
    if int(a) != a or a < 1:
        raise ValueError(f"Moment order must be a positive integer, got {a}")
    if int(n) != n or n < 5:
        raise ValueError(f"Moment bound needs n >= 5, got {n}")
    exact = float(even_moment(a, n))
    bound = (2.0 * a / (n - 4)) ** a
    return exact, bound


def harmonic_dimension(k: int, n: int) -> int:
    """Dimension c_{k,n} of degree-k spherical harmonics on S^{n-1}."""
    k = _check_degree(k)
    n = check_dimension(n)
    if k == 0:
        return 1
    return int(comb(k + n - 2, k, exact=True)) + int(comb(k + n - 3, k - 1, exact=True))


def _check_r(r: float) -> float:
    if not -1.0 < r < 1.0:
        raise ValueError(f"r must lie in (-1, 1), got {r}")
    return float(r)


@dataclass(frozen=True)
class EigenTable:
    """Eigenvalues mu_{0,r}, ..., mu_{K,r} of A_r on S^{n-1}."""
    n: int
    r: float
    values: Tuple[float, ...]

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def powers(self) -> np.ndarray:
        return self.r ** np.arange(self.K + 1, dtype=float)

    def deviations(self) -> np.ndarray:
        """|mu_{k,r} - r^k| for each k."""
        return np.abs(np.asarray(self.values) - self.powers())

    def max_deviation(self) -> float:
        return float(self.deviations().max())

    def to_frame(self) -> pd.DataFrame:
        """Table with columns k, mu, r_power_k, deviation."""
        return pd.DataFrame({
            "k": np.arange(self.K + 1),
            "mu": np.asarray(self.values),
            "r_power_k": self.powers(),
            "deviation": self.deviations(),
        })


def eigenvalue_table(n: int, r: float, K: int) -> EigenTable:
    """EigenTable for A_r up to degree K."""
    r = _check_r(r)
    values = gegenbauer_table(K, n, r)
    return EigenTable(n=check_dimension(n), r=r, values=tuple(float(v) for v in values))


def eigenvalue_deviation_table(n_list: Iterable[int], r: float, K: int) -> pd.DataFrame:
    """max_{k<=K} |mu_{k,r} - r^k| for each n, with the maximizing degree."""
    r = _check_r(r)
    if r == 0.0:
        raise ValueError("Deviation tables need r != 0")
    rows: List[dict] = []
    for n in n_list:
        table = eigenvalue_table(n, r, K)
        dev = table.deviations()
        rows.append({"n": int(n), "max_deviation": float(dev.max()), "argmax_k": int(dev.argmax())})
    return pd.DataFrame(rows, columns=["n", "max_deviation", "argmax_k"])


def decay_slope(n_list: Sequence[float], values: Sequence[float]) -> float:
    """Least-squares slope of log(values) against log(n)."""
    x = np.asarray(n_list, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("Need at least two matching (n, value) pairs")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("Log-log fit needs positive n and values")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
