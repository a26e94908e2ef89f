"""HTTP service wrapping the simulation pipeline."""

from .app import create_app

__all__ = ["create_app"]
