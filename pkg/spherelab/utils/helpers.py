"""
Helper utilities for spherelab.
"""

import hashlib
import time
from pathlib import Path
from typing import Optional, Union

DIGEST_ALGORITHMS = ('sha256', 'sha1', 'md5')


def calculate_hash(content: Union[str, bytes], algorithm: str = 'sha256') -> str:
   """Hex digest of text (utf-8) or bytes."""
   if algorithm not in DIGEST_ALGORITHMS:
       raise ValueError(f"Unsupported hash algorithm: {algorithm}")
   if isinstance(content, str):
       content = content.encode('utf-8')
   return hashlib.new(algorithm, content).hexdigest()


def file_digest(path: Union[str, Path], algorithm: str = 'sha256') -> str:
   """Hex digest of a file's bytes, as recorded in run manifests."""
   return calculate_hash(Path(path).read_bytes(), algorithm)


def format_duration(seconds: float) -> str:
   """Short human-readable duration: 500ms, 4.2s, 1m 15s, 2h 3m."""
   if seconds < 1:
       return f"{seconds * 1000:.0f}ms"
   if seconds < 60:
       return f"{seconds:.1f}s"
   minutes, secs = divmod(int(seconds), 60)
   if minutes < 60:
       return f"{minutes}m {secs}s"
   hours, minutes = divmod(minutes, 60)
   return f"{hours}h {minutes}m"


def ensure_directory(path: Union[str, Path]) -> Path:
   path = Path(path)
   path.mkdir(parents=True, exist_ok=True)
   return path


class Timer:
   """Wall-clock timer; `elapsed` is live inside the block and frozen after it."""

   def __init__(self):
       self._start: Optional[float] = None
       self._end: Optional[float] = None

   def __enter__(self):
       self._start = time.perf_counter()
       return self

   def __exit__(self, exc_type, exc_val, exc_tb):
       self._end = time.perf_counter()

   @property
   def elapsed(self) -> float:
       if self._start is None:
           return 0.0
       return (self._end or time.perf_counter()) - self._start
