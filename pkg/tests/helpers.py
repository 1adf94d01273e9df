"""Shared test utilities: independent oracles and randomized geometry.

The statistics oracle is a deliberately naive pure-Python two-pass
implementation kept separate from the library code it checks.
"""
from __future__ import annotations

import math

import numpy as np

from fiberscope.model import ClusterGeometry, FiberPolyline


def brute_force_field_stats(samples: list[float]) -> dict | None:
    """Two-pass mean/std/min/max over non-NaN samples; None if all NaN."""
    used = [s for s in samples if not math.isnan(s)]
    if not used:
        return None
    mean = math.fsum(used) / len(used)
    var = math.fsum((s - mean) ** 2 for s in used) / len(used)
    return {
        "mean": mean,
        "std": math.sqrt(var),
        "min": min(used),
        "max": max(used),
        "count": len(used),
        "nan_count": len(samples) - len(used),
    }


def brute_force_summary(g: ClusterGeometry) -> dict:
    """Independent cluster aggregation: pooled vertex samples per scalar,
    per-fiber samples per property, unweighted mean of polyline lengths."""
    per_scalar = {}
    for name in g.scalar_names:
        samples: list[float] = []
        for f in g.fibers:
            samples.extend(float(v) for v in f.per_vertex_scalars[name])
        stats = brute_force_field_stats(samples)
        if stats is not None:
            per_scalar[name] = stats
    per_property = {}
    for name in g.property_names:
        stats = brute_force_field_stats(
            [float(v) for v in g.per_fiber_properties[name]]
        )
        if stats is not None:
            per_property[name] = stats
    lengths = []
    for f in g.fibers:
        total = 0.0
        pts = f.points.tolist()
        for a, b in zip(pts, pts[1:]):
            total += math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
        lengths.append(total)
    return {
        "fiber_count": len(g.fibers),
        "mean_fiber_length": math.fsum(lengths) / len(lengths) if lengths else 0.0,
        "per_scalar": per_scalar,
        "per_property": per_property,
    }


def random_cluster(
    rng: np.random.Generator,
    cluster_id: int = 0,
    max_fibers: int = 10,
    max_points: int = 10,
    max_scalars: int = 10,
    max_properties: int = 10,
    nan_fraction: float = 0.0,
) -> ClusterGeometry:
    """Random small cluster with float32-quantized values and short names."""
    n_fibers = int(rng.integers(1, max_fibers + 1))
    n_scalars = int(rng.integers(0, max_scalars + 1))
    n_properties = int(rng.integers(0, max_properties + 1))
    scalar_names = [f"s{i}" for i in range(n_scalars)]
    property_names = [f"p{i}" for i in range(n_properties)]

    def f32(a: np.ndarray) -> np.ndarray:
        return a.astype(np.float32).astype(np.float64)

    def maybe_nan(a: np.ndarray) -> np.ndarray:
        if nan_fraction > 0.0:
            mask = rng.random(a.shape) < nan_fraction
            a = a.copy()
            a[mask] = np.nan
        return a

    fibers = []
    for _ in range(n_fibers):
        n_pts = int(rng.integers(2, max_points + 1))
        pts = f32(rng.normal(scale=40.0, size=(n_pts, 3)))
        scalars = {
            name: maybe_nan(f32(rng.normal(loc=1.0, scale=0.5, size=n_pts)))
            for name in scalar_names
        }
        fibers.append(FiberPolyline(points=pts, per_vertex_scalars=scalars))
    properties = {
        name: maybe_nan(f32(rng.normal(loc=2.0, scale=1.0, size=n_fibers)))
        for name in property_names
    }
    return ClusterGeometry(
        cluster_id=cluster_id,
        fibers=fibers,
        per_fiber_properties=properties,
        scalar_names=scalar_names,
        property_names=property_names,
    )


def rel_close(a: float, b: float, tol: float = 1e-12) -> bool:
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)
