"""Exact combinatorics of maximal orthogonal root sets in types D, E7 and E8."""

from .rootsys import RootSystem, SystemType, build, system

__all__ = ["RootSystem", "SystemType", "build", "system"]
