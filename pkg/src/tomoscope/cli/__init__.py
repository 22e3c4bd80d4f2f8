"""Command-line interface (``tomoscope``)."""

from .main import main, run

__all__ = ["main", "run"]
