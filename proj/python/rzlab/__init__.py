"""Hermitian lattices, neighbor counts and fiber graphs over ramified 2-adic extensions."""

from ._core import (
    Error,
    Field,
    Lattice,
    deform_tangent,
    graph_build,
    graph_stats,
    quat_check,
    required_precision,
    verify_props,
)

__all__ = [
    "Error",
    "Field",
    "Lattice",
    "deform_tangent",
    "graph_build",
    "graph_stats",
    "quat_check",
    "required_precision",
    "verify_props",
]
