"""Domain model: subjects, clusters, fibers, and scalar fields.

Fibers are 3D polylines in file-native coordinates (millimeters, RAS for the
formats we read). Values attach either per vertex (one value per polyline
point) or per fiber (one value per polyline). All types are plain data;
construction never validates, so malformed geometry can be represented and
then diagnosed with :func:`validate_geometry`.

Arrays are frozen (non-writeable) after construction so instances can be
shared across threads without copying.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ClusterKey:
    """Identity of one cluster within a cohort: (subject, cluster id)."""

    subject_id: str
    cluster_id: int

    def __str__(self) -> str:
        return f"{self.subject_id}/{self.cluster_id}"


@dataclass(eq=False)
class FiberPolyline:
    """One streamline: an ordered point sequence plus per-vertex values.

    points has shape (n_points, 3); each entry of per_vertex_scalars has
    shape (n_points,).
    """

    points: np.ndarray
    per_vertex_scalars: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.points = _freeze(np.atleast_2d(self.points))
        self.per_vertex_scalars = {
            name: _freeze(v) for name, v in self.per_vertex_scalars.items()
        }

    @property
    def n_points(self) -> int:
        return self.points.shape[0]


@dataclass(eq=False)
class ClusterGeometry:
    """One fiber bundle as read from a single cluster file."""

    cluster_id: int
    fibers: list[FiberPolyline]
    per_fiber_properties: dict[str, np.ndarray] = field(default_factory=dict)
    scalar_names: list[str] = field(default_factory=list)
    property_names: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.per_fiber_properties = {
            name: _freeze(v) for name, v in self.per_fiber_properties.items()
        }

    @property
    def n_fibers(self) -> int:
        return len(self.fibers)


@dataclass(eq=False)
class SubjectRecord:
    """One subject: id, string metadata, and the index of its cluster files."""

    subject_id: str
    metadata: dict[str, str] = field(default_factory=dict)
    cluster_index: dict[int, Path] = field(default_factory=dict)


@dataclass(eq=False)
class Cohort:
    """All subjects under analysis plus raw value ranges of loaded clusters.

    scalar_ranges maps every scalar/property name seen so far to the
    (min, max) of its raw samples across all loaded clusters; per-fiber
    properties that collide with a per-vertex scalar name are stored under
    the "name (property)" key (renamed at load time).
    """

    subjects: list[SubjectRecord]
    scalar_ranges: dict[str, tuple[float, float]] = field(default_factory=dict)


PROPERTY_SUFFIX = " (property)"


def resolve_name_collisions(g: ClusterGeometry) -> ClusterGeometry:
    """Rename per-fiber properties that share a name with a per-vertex scalar.

    Scalars and properties share one namespace downstream (range tracking,
    fingerprint axes); a collision gets the property renamed with
    PROPERTY_SUFFIX. Returns g unchanged when there is nothing to rename.
    """
    colliding = set(g.scalar_names) & set(g.property_names)
    if not colliding:
        return g
    rename = {n: n + PROPERTY_SUFFIX for n in colliding}
    return ClusterGeometry(
        cluster_id=g.cluster_id,
        fibers=g.fibers,
        per_fiber_properties={
            rename.get(n, n): v for n, v in g.per_fiber_properties.items()
        },
        scalar_names=list(g.scalar_names),
        property_names=[rename.get(n, n) for n in g.property_names],
    )


def validate_geometry(g: ClusterGeometry) -> list[str]:
    """Check every geometry invariant; return human-readable violations.

    Diagnostic only: never raises, an empty list means the cluster is valid.
    Each message names the offending fiber/field and the broken rule.
    """
    violations: list[str] = []
    if g.cluster_id < 0:
        violations.append(f"cluster_id {g.cluster_id} is negative")
    if g.n_fibers < 1:
        violations.append("cluster has no fibers")

    declared = list(g.scalar_names)
    if len(set(declared)) != len(declared):
        violations.append("duplicate scalar names")
    for i, f in enumerate(g.fibers):
        if f.points.ndim != 2 or f.points.shape[1] != 3:
            violations.append(f"fiber {i}: points are not 3D")
            continue
        if f.n_points < 2:
            violations.append(f"fiber {i}: fewer than 2 points")
        if not np.isfinite(f.points).all():
            violations.append(f"fiber {i}: non-finite coordinate")
        for name in declared:
            if name not in f.per_vertex_scalars:
                violations.append(f"fiber {i}: missing scalar '{name}'")
        for name, values in f.per_vertex_scalars.items():
            if name not in declared:
                violations.append(f"fiber {i}: undeclared scalar '{name}'")
            if len(values) != f.n_points:
                violations.append(
                    f"fiber {i}: scalar '{name}' has {len(values)} values "
                    f"for {f.n_points} points"
                )

    declared_props = list(g.property_names)
    if len(set(declared_props)) != len(declared_props):
        violations.append("duplicate property names")
    for name in declared_props:
        if name not in g.per_fiber_properties:
            violations.append(f"missing property '{name}'")
    for name, values in g.per_fiber_properties.items():
        if name not in declared_props:
            violations.append(f"undeclared property '{name}'")
        if len(values) != g.n_fibers:
            violations.append(
                f"property '{name}' has {len(values)} values "
                f"for {g.n_fibers} fibers"
            )
    return violations


def _arrays_equal_f32(a: np.ndarray, b: np.ndarray) -> bool:
    a32 = np.asarray(a, dtype=np.float64).astype(np.float32)
    b32 = np.asarray(b, dtype=np.float64).astype(np.float32)
    return a32.shape == b32.shape and np.array_equal(a32, b32, equal_nan=True)


def geometries_equal(a: ClusterGeometry, b: ClusterGeometry) -> bool:
    """Exact equality at 32-bit float precision (the TRK storage width).

    NaN compares equal to NaN so clusters with missing samples still
    round-trip.
    """
    if a.cluster_id != b.cluster_id or a.n_fibers != b.n_fibers:
        return False
    if a.scalar_names != b.scalar_names or a.property_names != b.property_names:
        return False
    for fa, fb in zip(a.fibers, b.fibers):
        if not _arrays_equal_f32(fa.points, fb.points):
            return False
        if set(fa.per_vertex_scalars) != set(fb.per_vertex_scalars):
            return False
        for name, va in fa.per_vertex_scalars.items():
            if not _arrays_equal_f32(va, fb.per_vertex_scalars[name]):
                return False
    if set(a.per_fiber_properties) != set(b.per_fiber_properties):
        return False
    for name, va in a.per_fiber_properties.items():
        if not _arrays_equal_f32(va, b.per_fiber_properties[name]):
            return False
    return True
