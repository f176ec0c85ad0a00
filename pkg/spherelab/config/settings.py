"""
Configuration management for spherelab.
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


class Config:
   """Configuration settings for spherelab."""

   def __init__(self, data_dir: Optional[str] = None):
       """Initialize configuration with optional data directory."""
       load_dotenv()

       # Base directories
       self.project_root = Path(__file__).parent.parent.parent

       if data_dir:
           self.data_dir = Path(data_dir)
       elif os.getenv("SPHERELAB_DATA_DIR"):
           self.data_dir = Path(os.environ["SPHERELAB_DATA_DIR"])
       else:
           # Use XDG data directory for installed packages, fallback to project dir for development
           xdg_data_home = os.getenv('XDG_DATA_HOME', str(Path.home() / '.local' / 'share'))
           installed_data_dir = Path(xdg_data_home) / 'spherelab'

           if (self.project_root / 'setup.py').exists() or (self.project_root / 'pyproject.toml').exists():
               # Development mode - use project data directory
               self.data_dir = self.project_root / "data"
           else:
               self.data_dir = installed_data_dir

       self.runs_dir = self.data_dir / "runs"

       # Reproducibility
       self.default_seed = int(os.getenv("SPHERELAB_SEED", "20240601"))
       self.workers = int(os.getenv("SPHERELAB_WORKERS", "1"))
       self.chunk_size = int(os.getenv("SPHERELAB_CHUNK_SIZE", "50000"))
       self.show_progress = os.getenv("SPHERELAB_SHOW_PROGRESS", "false").lower() == "true"

       # Spectral settings
       self.max_degree = int(os.getenv("SPHERELAB_MAX_DEGREE", "64"))
       self.quadrature_tol = float(os.getenv("SPHERELAB_QUAD_TOL", "1e-12"))
       self.quadrature_max_order = int(os.getenv("SPHERELAB_QUAD_MAX_ORDER", "4096"))

       # Experiment settings
       self.confidence = float(os.getenv("SPHERELAB_CONFIDENCE", "0.95"))
       self.min_samples = int(os.getenv("SPHERELAB_MIN_SAMPLES", "1000"))
       self.subsphere_samples = int(os.getenv("SPHERELAB_SUBSPHERE_SAMPLES", "10000"))
       self.min_subsphere_samples = int(os.getenv("SPHERELAB_MIN_SUBSPHERE_SAMPLES", "100"))

       # Logging
       self.log_level = os.getenv("SPHERELAB_LOG_LEVEL", "INFO")
       self.log_file = self.data_dir / "spherelab.log"

   def ensure_runs_dir(self) -> Path:
       """Create the run output directory if needed and return it."""
       self.runs_dir.mkdir(parents=True, exist_ok=True)
       return self.runs_dir

   def __repr__(self):
       """String representation of config."""
       return f"Config(data_dir={self.data_dir}, seed={self.default_seed}, workers={self.workers})"
