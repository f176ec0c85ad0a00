"""
Confidence intervals for Monte Carlo proportions and means.
"""

import math
from typing import Tuple

from scipy.stats import beta, norm


def z_score(confidence: float) -> float:
   if not 0.0 < confidence < 1.0:
       raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
   return float(norm.ppf(1 - (1 - confidence) / 2))


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
   """Wilson score interval for a binomial proportion."""
   if trials <= 0:
       raise ValueError("Wilson interval needs at least one trial")
   if not 0 <= successes <= trials:
       raise ValueError(f"successes={successes} outside [0, {trials}]")
   z = z_score(confidence)
   phat = successes / trials
   denom = 1 + z ** 2 / trials
   centre = phat + z ** 2 / (2 * trials)
   margin = z * math.sqrt((phat * (1 - phat) + z ** 2 / (4 * trials)) / trials)
   lower = (centre - margin) / denom
   upper = (centre + margin) / denom
   return max(0.0, float(lower)), min(1.0, float(upper))


def wilson_half_width(successes: int, trials: int, confidence: float = 0.95) -> float:
   lower, upper = wilson_interval(successes, trials, confidence)
   return (upper - lower) / 2


def clopper_pearson_upper(successes: int, trials: int, confidence: float = 0.95) -> float:
   """One-sided exact upper confidence bound for a binomial proportion."""
   if trials <= 0:
       raise ValueError("Clopper-Pearson bound needs at least one trial")
   if successes >= trials:
       return 1.0
   return float(beta.ppf(confidence, successes + 1, trials - successes))


def normal_interval(mean: float, std_error: float, confidence: float = 0.95) -> Tuple[float, float]:
   """mean -/+ z * std_error."""
   z = z_score(confidence)
   return float(mean - z * std_error), float(mean + z * std_error)
