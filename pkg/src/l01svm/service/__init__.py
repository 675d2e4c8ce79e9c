"""HTTP service exposing training, prediction, tuning, data generation, and
benchmarks over JSON bodies."""

from .app import create_app

__all__ = ["create_app"]
