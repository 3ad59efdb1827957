"""Vertex fault-tolerant spanners for additively weighted points."""

__version__ = "0.1.0"
