"""Cluster statistics, cohort-wide normalization, and fingerprints.

Per-vertex scalars are pooled over every vertex of every fiber in a cluster;
per-fiber properties are pooled over fibers. NaN samples are skipped (and
counted); a field whose samples are all NaN is dropped with a warning.

Fingerprints normalize per-cluster *means* against the min/max of means
across the cohort, so a single outlier vertex cannot flatten every other
cluster's radar axis. Standard deviations use the population convention
(divide by N).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    AllValuesNaNWarning,
    DegenerateFiber,
    EmptyCohort,
    InvalidRange,
    UnknownAxis,
)
from .model import PROPERTY_SUFFIX, ClusterGeometry, ClusterKey, FiberPolyline


@dataclass(frozen=True)
class FieldStats:
    mean: float
    std: float
    min: float
    max: float
    count: int  # samples used
    nan_count: int  # samples skipped

    def as_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "min": self.min,
            "max": self.max,
            "count": self.count,
            "nan_count": self.nan_count,
        }


@dataclass(frozen=True)
class ClusterSummary:
    key: ClusterKey
    fiber_count: int
    mean_fiber_length: float
    per_scalar: dict[str, FieldStats]
    per_property: dict[str, FieldStats]

    def as_dict(self) -> dict:
        return {
            "subject_id": self.key.subject_id,
            "cluster_id": self.key.cluster_id,
            "fiber_count": self.fiber_count,
            "mean_fiber_length": self.mean_fiber_length,
            "per_scalar": {n: s.as_dict() for n, s in self.per_scalar.items()},
            "per_property": {n: s.as_dict() for n, s in self.per_property.items()},
        }


@dataclass(frozen=True)
class Fingerprint:
    """Cohort-normalized scalar vector in [0,1]^m; the radar chart's axes.

    axis_names are sorted lexicographically so fingerprints from different
    clusters line up axis by axis.
    """

    key: ClusterKey
    axis_names: tuple[str, ...]
    values: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "subject_id": self.key.subject_id,
            "cluster_id": self.key.cluster_id,
            "axis_names": list(self.axis_names),
            "values": list(self.values),
        }


def fiber_length(f: FiberPolyline) -> float:
    """Polyline length: sum of Euclidean segment lengths, in millimeters."""
    if f.n_points < 2:
        raise DegenerateFiber(f"{f.n_points} point(s), need at least 2")
    return float(np.linalg.norm(np.diff(f.points, axis=0), axis=1).sum())


def _field_stats(samples: np.ndarray, field: str, key: ClusterKey) -> FieldStats | None:
    nan_mask = np.isnan(samples)
    used = samples[~nan_mask]
    nan_count = int(nan_mask.sum())
    if used.size == 0:
        warnings.warn(
            f"cluster {key}: field '{field}' has only NaN samples, dropped",
            AllValuesNaNWarning,
            stacklevel=3,
        )
        return None
    return FieldStats(
        mean=float(used.mean()),
        std=float(used.std()),
        min=float(used.min()),
        max=float(used.max()),
        count=int(used.size),
        nan_count=nan_count,
    )


def cluster_summary(g: ClusterGeometry, key: ClusterKey) -> ClusterSummary:
    """Aggregate one cluster into per-field statistics.

    All-NaN fields are omitted (with an AllValuesNaNWarning), never fatal.
    """
    per_scalar: dict[str, FieldStats] = {}
    for name in g.scalar_names:
        samples = np.concatenate(
            [f.per_vertex_scalars[name] for f in g.fibers]
        ) if g.fibers else np.empty(0)
        stats = _field_stats(samples, name, key)
        if stats is not None:
            per_scalar[name] = stats

    per_property: dict[str, FieldStats] = {}
    for name in g.property_names:
        stats = _field_stats(np.asarray(g.per_fiber_properties[name]), name, key)
        if stats is not None:
            per_property[name] = stats

    lengths = [fiber_length(f) for f in g.fibers]
    return ClusterSummary(
        key=key,
        fiber_count=g.n_fibers,
        mean_fiber_length=float(np.mean(lengths)) if lengths else 0.0,
        per_scalar=per_scalar,
        per_property=per_property,
    )


def minmax_normalize(x: float, range_: tuple[float, float]) -> float:
    """Min-max feature scaling into [0,1]; x is clamped into the range first.

    A degenerate range (min == max) maps everything to the neutral 0.5.
    """
    lo, hi = range_
    if lo > hi:
        raise InvalidRange(f"min {lo} > max {hi}")
    if lo == hi:
        return 0.5
    x = min(max(x, lo), hi)
    return (x - lo) / (hi - lo)


def merged_means(s: ClusterSummary) -> dict[str, float]:
    """One name->mean map over scalars and properties.

    Properties whose name collides with a scalar get PROPERTY_SUFFIX, the
    same rule the loader applies to geometry, so summaries built from
    un-resolved geometry still merge cleanly.
    """
    means = {name: st.mean for name, st in s.per_scalar.items()}
    for name, st in s.per_property.items():
        if name in means:
            name = name + PROPERTY_SUFFIX
        means[name] = st.mean
    return means


def cohort_ranges(summaries: list[ClusterSummary]) -> dict[str, tuple[float, float]]:
    """Per-field (min, max) of per-cluster means across the cohort.

    Fields present in only some clusters get a range over those clusters.
    """
    if not summaries:
        raise EmptyCohort("no summaries")
    ranges: dict[str, tuple[float, float]] = {}
    for s in summaries:
        for name, mean in merged_means(s).items():
            lo, hi = ranges.get(name, (math.inf, -math.inf))
            ranges[name] = (min(lo, mean), max(hi, mean))
    return ranges


def fingerprint(
    s: ClusterSummary,
    ranges: dict[str, tuple[float, float]],
    selected_axes: list[str] | tuple[str, ...],
) -> Fingerprint:
    """Normalize the cluster's mean on each selected axis.

    Axes are emitted in lexicographic order regardless of request order.
    An axis the cluster lacks gets the neutral value 0.5; an axis absent
    from the cohort ranges entirely is an error.
    """
    axes = sorted(set(selected_axes))
    if not axes:
        raise UnknownAxis("no axes selected")
    unknown = [a for a in axes if a not in ranges]
    if unknown:
        raise UnknownAxis(f"axes {unknown} not among known fields")
    means = merged_means(s)
    values = tuple(
        minmax_normalize(means[a], ranges[a]) if a in means else 0.5 for a in axes
    )
    return Fingerprint(key=s.key, axis_names=tuple(axes), values=values)
