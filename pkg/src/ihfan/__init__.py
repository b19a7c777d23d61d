"""Combinatorial intersection cohomology of fans in exact arithmetic."""

__version__ = "0.1.0"
