"""
spherelab - numerical laboratory for density theorems on the sphere

Spectral tools for the spherical averaging operator, region measures,
inductive-configuration constants and a reproducible Monte Carlo harness.
"""

__version__ = "0.1.0"

from .config.settings import Config
from .constants.derived import derive_constants
from .spectral.gegenbauer import eigenvalue_table
from .harness.models import ExperimentSpec
from .harness.experiments import ExperimentHarness
from .harness.acceptance import AcceptanceSuite

class SphereLab:
   """Main spherelab interface for constants, spectral tables and experiments."""

   def __init__(self, data_dir=None, config=None, workers=None):
       """Initialize SphereLab with optional data directory and config."""
       self.config = config or Config(data_dir=data_dir)
       self.workers = workers
       self.harness = None

   def get_harness(self):
       """Get or create experiment harness."""
       if self.harness is None:
           self.harness = ExperimentHarness(self.config, workers=self.workers)
       return self.harness

   def constants(self, config):
       """Derived constants of an inductive configuration."""
       return derive_constants(config)

   def spectral_table(self, n, r, K=None):
       """Eigenvalue table of A_r up to degree K."""
       return eigenvalue_table(n, r, K if K is not None else self.config.max_degree).to_frame()

   def estimate(self, spec):
       """Run an experiment from an ExperimentSpec or its dict form."""
       if isinstance(spec, dict):
           spec = ExperimentSpec.from_dict(spec)
       return self.get_harness().run(spec)

   def verify(self, scale=1.0, only=None):
       """Run the acceptance suite."""
       return AcceptanceSuite(self.config, scale=scale, workers=self.workers).run(only)

__all__ = [
   "SphereLab",
   "Config",
   "ExperimentSpec",
   "ExperimentHarness",
   "AcceptanceSuite",
   "__version__",
]
