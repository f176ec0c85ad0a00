"""
Storage module for spherelab.
"""

from .database import RunDatabase
from .manifest import RunManifest, ManifestError, MANIFEST_NAME

__all__ = ["RunDatabase", "RunManifest", "ManifestError", "MANIFEST_NAME"]
