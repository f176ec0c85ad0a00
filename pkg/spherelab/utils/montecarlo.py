"""
Chunked Monte Carlo execution with reproducible reduction.

Samples are split into fixed-size chunks; chunk i always draws from substream
i of the run's stream, and per-chunk sums are combined in chunk order, so the
result does not depend on how many workers ran the chunks.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from tqdm import tqdm

from .logging import get_logger

Kernel = Callable[[int, np.random.Generator], np.ndarray]


@dataclass
class Tally:
   """Running count, sum and sum of squares of (possibly vector) samples."""
   count: int
   total: np.ndarray
   total_sq: np.ndarray

   @classmethod
   def from_values(cls, values: np.ndarray) -> "Tally":
       values = np.asarray(values, dtype=float)
       return cls(values.shape[0], values.sum(axis=0), np.square(values).sum(axis=0))

   def merge(self, other: "Tally") -> "Tally":
       return Tally(self.count + other.count, self.total + other.total, self.total_sq + other.total_sq)

   @property
   def mean(self):
       if self.count == 0:
           raise ValueError("Empty tally has no mean")
       return self.total / self.count

   @property
   def std_error(self):
       """Standard error of the mean with the unbiased variance."""
       if self.count < 2:
           return np.zeros_like(self.total)
       variance = (self.total_sq - self.count * np.square(self.mean)) / (self.count - 1)
       return np.sqrt(np.maximum(variance, 0.0) / self.count)


class MonteCarloRunner:
   """Runs Monte Carlo kernels over chunks on a thread pool."""

   def __init__(self, workers: int = 1, chunk_size: int = 50000, show_progress: bool = False):
       """Initialize runner."""
       if workers < 1:
           raise ValueError(f"workers must be >= 1, got {workers}")
       if chunk_size < 1:
           raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
       self.workers = int(workers)
       self.chunk_size = int(chunk_size)
       self.show_progress = show_progress
       self.logger = get_logger(__name__)

   @classmethod
   def from_config(cls, config, workers: Optional[int] = None) -> "MonteCarloRunner":
       """Build a runner from Config, with an optional worker override."""
       return cls(
           workers=workers or config.workers,
           chunk_size=config.chunk_size,
           show_progress=config.show_progress,
       )

   def chunk_sizes(self, samples: int) -> List[int]:
       """Sizes of the chunks covering `samples` draws."""
       if samples < 1:
           raise ValueError(f"samples must be positive, got {samples}")
       full, rest = divmod(int(samples), self.chunk_size)
       return [self.chunk_size] * full + ([rest] if rest else [])

   def map_chunks(self, kernel: Kernel, samples: int, stream, desc: str = "Sampling") -> List[np.ndarray]:
       """Run `kernel(size, generator)` per chunk; results are in chunk order.

       `stream` is a RandomStream (one child per chunk) or a bare numpy
       Generator, which is consumed sequentially on one thread.
       """
       sizes = self.chunk_sizes(samples)
       self.logger.debug(f"{desc}: {samples} samples in {len(sizes)} chunks, {self.workers} workers")

       if isinstance(stream, np.random.Generator):
           return [kernel(size, stream) for size in self._progress(sizes, desc)]

       def run(index: int) -> np.ndarray:
           return kernel(sizes[index], stream.child(index).generator)

       if self.workers == 1:
           return [run(i) for i in self._progress(range(len(sizes)), desc)]

       with ThreadPoolExecutor(max_workers=self.workers) as pool:
           results = pool.map(run, range(len(sizes)))
           return list(self._progress(results, desc, total=len(sizes)))

   def tally(self, kernel: Kernel, samples: int, stream, desc: str = "Sampling") -> Tally:
       """Tally the per-sample values returned by `kernel`."""
       result = None
       for values in self.map_chunks(kernel, samples, stream, desc):
           part = Tally.from_values(values)
           result = part if result is None else result.merge(part)
       return result

   def _progress(self, iterable, desc: str, total: Optional[int] = None):
       if not self.show_progress:
           return iterable
       return tqdm(iterable, desc=desc, total=total, unit="chunk")
