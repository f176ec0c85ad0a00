"""
Utilities module for spherelab.
"""

from .logging import get_logger, setup_logging, log_performance, LogCapture
from .helpers import calculate_hash, file_digest, format_duration, ensure_directory, Timer
from .montecarlo import MonteCarloRunner, Tally
from .stats import wilson_interval, clopper_pearson_upper, normal_interval, z_score

__all__ = [
   "get_logger",
   "setup_logging",
   "log_performance",
   "LogCapture",
   "calculate_hash",
   "file_digest",
   "format_duration",
   "ensure_directory",
   "Timer",
   "MonteCarloRunner",
   "Tally",
   "wilson_interval",
   "clopper_pearson_upper",
   "normal_interval",
   "z_score",
]
