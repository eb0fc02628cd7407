"""Symbolic Lie symmetry analysis for geodesic equations.

Pipeline: metric -> Christoffel symbols -> geodesic system and
Lagrangian -> Noether / Lie point symmetry verification and solving ->
Lie algebra structure (brackets, Killing form, Levi split, adjoint
maps) -> one-dimensional optimal-system reduction.
"""

__version__ = "0.1.0"
