"""
Configuration management for spherelab.
"""

from .settings import Config

__all__ = ["Config"]
