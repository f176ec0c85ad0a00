"""
Run manifests: everything needed to reproduce a command's output files.
"""

import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..utils.helpers import ensure_directory, file_digest
from ..utils.logging import get_logger

MANIFEST_NAME = "manifest.json"

logger = get_logger(__name__)


class ManifestError(ValueError):
   """Raised for unreadable or inconsistent manifests."""


@dataclass
class RunManifest:
   """Command, parameters, seed, version, runtime and output digests of one run."""
   command: str
   parameters: Dict[str, Any]
   seed: Optional[int]
   version: str
   runtime: float = 0.0
   workers: int = 1
   created_at: str = field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))
   outputs: Dict[str, str] = field(default_factory=dict)

   def record_outputs(self, paths: List[Union[str, Path]]):
       """Store sha256 digests keyed by file name."""
       for path in paths:
           path = Path(path)
           self.outputs[path.name] = file_digest(path)

   def to_dict(self) -> Dict[str, Any]:
       return {
           "command": self.command,
           "parameters": self.parameters,
           "seed": self.seed,
           "version": self.version,
           "runtime": self.runtime,
           "workers": self.workers,
           "created_at": self.created_at,
           "outputs": self.outputs,
       }

   @classmethod
   def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
       missing = [key for key in ("command", "parameters", "version") if key not in data]
       if missing:
           raise ManifestError(f"Manifest is missing {', '.join(missing)}")
       return cls(
           command=data["command"],
           parameters=data["parameters"],
           seed=data.get("seed"),
           version=data["version"],
           runtime=float(data.get("runtime", 0.0)),
           workers=int(data.get("workers", 1)),
           created_at=data.get("created_at", ""),
           outputs=dict(data.get("outputs", {})),
       )

   def write(self, out_dir: Union[str, Path]) -> Path:
       """Write manifest.json next to the outputs."""
       path = ensure_directory(out_dir) / MANIFEST_NAME
       with open(path, "w", encoding="utf-8") as f:
           json.dump(self.to_dict(), f, indent=2, sort_keys=True)
       logger.info(f"Wrote manifest for '{self.command}' to {path}")
       return path

   @classmethod
   def load(cls, path: Union[str, Path]) -> "RunManifest":
       path = Path(path)
       if path.is_dir():
           path = path / MANIFEST_NAME
       try:
           with open(path, "r", encoding="utf-8") as f:
               data = json.load(f)
       except (OSError, json.JSONDecodeError) as e:
           raise ManifestError(f"Cannot read manifest {path}: {e}") from e
       return cls.from_dict(data)

   def verify(self, out_dir: Union[str, Path]) -> Dict[str, bool]:
       """Compare recorded digests against the files in `out_dir`."""
       out_dir = Path(out_dir)
       results = {}
       for name, digest in self.outputs.items():
           path = out_dir / name
           results[name] = path.exists() and file_digest(path) == digest
       return results
