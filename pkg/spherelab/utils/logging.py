"""
Logging utilities for spherelab.

All handlers write to stderr or a file; stdout belongs to command output.
"""

import functools
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None,
                  enable_console: bool = True) -> None:
   """Configure the root logger for a spherelab process."""
   level = getattr(logging, log_level.upper(), logging.INFO)
   formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

   root = logging.getLogger()
   root.setLevel(level)
   root.handlers = []

   handlers: List[logging.Handler] = []
   if enable_console:
       handlers.append(logging.StreamHandler(sys.stderr))
   if log_file:
       path = Path(log_file)
       path.parent.mkdir(parents=True, exist_ok=True)
       handlers.append(logging.FileHandler(path, encoding='utf-8'))

   for handler in handlers:
       handler.setLevel(level)
       handler.setFormatter(formatter)
       root.addHandler(handler)

   # numpy overflow/invalid warnings end up in the log instead of on the terminal
   logging.captureWarnings(True)


def get_logger(name: str) -> logging.Logger:
   """Get a logger instance for the given name."""
   return logging.getLogger(name)


class LogCapture:
   """Collect records from one logger inside a with-block (for tests)."""

   def __init__(self, logger_name: Optional[str] = None, level: int = logging.INFO):
       self.logger_name = logger_name or 'spherelab'
       self.level = level
       self.records: List[logging.LogRecord] = []
       self._handler: Optional[logging.Handler] = None
       self._previous_level = logging.NOTSET

   def __enter__(self):
       capture = self

       class _Collector(logging.Handler):
           def emit(self, record):
               capture.records.append(record)

       self._handler = _Collector(level=self.level)
       logger = logging.getLogger(self.logger_name)
       self._previous_level = logger.level
       if logger.getEffectiveLevel() > self.level:
           logger.setLevel(self.level)
       logger.addHandler(self._handler)
       return self

   def __exit__(self, exc_type, exc_val, exc_tb):
       logger = logging.getLogger(self.logger_name)
       logger.removeHandler(self._handler)
       logger.setLevel(self._previous_level)

   def get_messages(self, level: Optional[int] = None) -> List[str]:
       """Captured messages, optionally only those at or above `level`."""
       floor = logging.NOTSET if level is None else level
       return [r.getMessage() for r in self.records if r.levelno >= floor]


def log_performance(func):
   """Log the wall time of an experiment entry point.

   When the result carries a `samples` count (an ExperimentReport does),
   the throughput is logged with it.
   """

   @functools.wraps(func)
   def wrapper(*args, **kwargs):
       logger = get_logger(func.__module__)
       start = time.perf_counter()
       try:
           result = func(*args, **kwargs)
       except Exception as e:
           logger.error(f"{func.__name__} failed after {time.perf_counter() - start:.2f}s: {e}")
           raise

       elapsed = time.perf_counter() - start
       samples = getattr(result, "samples", None)
       if isinstance(samples, int) and elapsed > 0:
           logger.info(f"{func.__name__} completed in {elapsed:.2f}s ({samples / elapsed:,.0f} draws/s)")
       else:
           logger.info(f"{func.__name__} completed in {elapsed:.2f}s")
       return result

   return wrapper
