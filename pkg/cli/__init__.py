"""
Command-line interface for spherelab.
"""

from .main import main

__all__ = ["main"]
