"""Cohort-scale tractography exploration.

Readers for TRK and VTP fiber-cluster files, per-cluster scalar statistics
normalized across a cohort, pivot-based multidimensional scaling into the
plane, and an HTTP API serving linked exploration views.
"""
from .model import (
    ClusterGeometry,
    ClusterKey,
    Cohort,
    FiberPolyline,
    SubjectRecord,
    validate_geometry,
)
from .stats import ClusterSummary, Fingerprint

__version__ = "0.1.0"

__all__ = [
    "ClusterGeometry",
    "ClusterKey",
    "ClusterSummary",
    "Cohort",
    "FiberPolyline",
    "Fingerprint",
    "SubjectRecord",
    "validate_geometry",
    "__version__",
]
