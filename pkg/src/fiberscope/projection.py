"""Planar layout of clusters by approximate multidimensional scaling.

Clusters are embedded so that Euclidean distances between their normalized
fingerprints are preserved as well as possible in 2D. The fast path uses
distances to a small set of k pivots: double-center the n x k squared
distance matrix C, take the top eigenvectors w of the k x k matrix C'C, and
read coordinates off the columns of C w. The full classical (Torgerson)
scaling serves as the exact reference for tests, and a similarity-invariant
Procrustes residual measures how far two layouts differ.

Pivots are chosen by the maxmin (farthest-point) rule from a seeded random
start, so layouts are reproducible bit for bit given the same seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    AxisMissing,
    BadK,
    BadRect,
    LengthMismatch,
    NegativeEntry,
    NoConvergence,
    NotSymmetric,
)
from .model import ClusterKey
from .stats import Fingerprint

DEFAULT_PIVOTS = 50


@dataclass(frozen=True)
class DistanceMetric:
    """Euclidean distance over a chosen subset of fingerprint axes."""

    axes: tuple[str, ...]
    kind: str = "euclidean"

    def __post_init__(self) -> None:
        if not self.axes:
            raise ValueError("metric needs at least one axis")
        if self.kind != "euclidean":
            raise ValueError(f"unsupported metric kind {self.kind!r}")


@dataclass
class ProjectionLayout:
    keys: list[ClusterKey]
    coords: np.ndarray  # (n, d)
    pivots: list[int]  # indices into keys
    metric: DistanceMetric

    def to_records(self) -> list[dict]:
        pivot_set = set(self.pivots)
        return [
            {
                "subject_id": k.subject_id,
                "cluster_id": k.cluster_id,
                "x": float(self.coords[i, 0]),
                "y": float(self.coords[i, 1]),
                "is_pivot": i in pivot_set,
            }
            for i, k in enumerate(self.keys)
        ]


@dataclass(frozen=True)
class BrushSelection:
    rect: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
    selected: frozenset[ClusterKey]
    highlighted: frozenset[ClusterKey]


def _axis_values(fp: Fingerprint, axes: tuple[str, ...]) -> np.ndarray:
    if fp.axis_names == axes:
        return np.asarray(fp.values, dtype=np.float64)
    lookup = dict(zip(fp.axis_names, fp.values))
    missing = [a for a in axes if a not in lookup]
    if missing:
        raise AxisMissing(f"fingerprint {fp.key} lacks axes {missing}")
    return np.array([lookup[a] for a in axes], dtype=np.float64)


def pairwise_distance(a: Fingerprint, b: Fingerprint, m: DistanceMetric) -> float:
    """Euclidean distance between two fingerprints on the metric's axes."""
    va = _axis_values(a, m.axes)
    vb = _axis_values(b, m.axes)
    return float(np.linalg.norm(va - vb))


def classical_mds(D: np.ndarray, d: int = 2) -> np.ndarray:
    """Classical (Torgerson) scaling of a full distance matrix.

    Double-centers the squared distances into a Gram matrix
    B = -1/2 J (D o D) J, diagonalizes it, and scales the top-d eigenvectors
    by sqrt of their (clamped non-negative) eigenvalues. The sign of each
    axis is fixed by making the largest-magnitude entry positive.

    Returns an (n, d) coordinate array; columns beyond the available
    positive spectrum are zero.
    """
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NotSymmetric(f"distance matrix has shape {D.shape}")
    if not np.allclose(D, D.T, rtol=1e-10, atol=1e-12):
        raise NotSymmetric("distance matrix differs from its transpose")
    if np.any(D < 0):
        raise NegativeEntry("distance matrix has a negative entry")
    n = D.shape[0]
    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * J @ (D * D) @ J
    try:
        evals, evecs = np.linalg.eigh(B)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(evals)[::-1]
    coords = np.zeros((n, d))
    for col, idx in enumerate(order[:d]):
        lam = max(evals[idx], 0.0)
        v = evecs[:, idx]
        coords[:, col] = v * math.sqrt(lam)
    return _fix_signs(coords)


def _fix_signs(coords: np.ndarray) -> np.ndarray:
    for col in range(coords.shape[1]):
        column = coords[:, col]
        if column.any() and column[np.argmax(np.abs(column))] < 0:
            coords[:, col] = -column
    return coords


def select_pivots(
    n: int,
    k: int,
    dist: Callable[[int, int], float],
    seed: int = 0,
) -> list[int]:
    """Choose k pivot indices by the maxmin farthest-point rule.

    The first pivot is a seeded uniform draw; each following pivot
    maximizes its distance to the nearest already-chosen pivot, ties broken
    by lowest index.
    """
    if not 1 <= k <= n:
        raise BadK(f"k={k} outside 1..{n}")
    rng = np.random.default_rng(seed)
    first = int(rng.integers(n))
    pivots = [first]
    nearest = np.array([dist(first, j) for j in range(n)], dtype=np.float64)
    nearest[first] = -1.0
    for _ in range(k - 1):
        nxt = int(np.argmax(nearest))
        pivots.append(nxt)
        row = np.array([dist(nxt, j) for j in range(n)], dtype=np.float64)
        nearest = np.minimum(nearest, row)
        nearest[nxt] = -1.0
    return pivots


def _maxmin_pivots_matrix(X: np.ndarray, k: int, seed: int) -> list[int]:
    # vectorized twin of select_pivots; squared distances preserve the
    # maxmin ordering so the sqrt is skipped
    n = X.shape[0]
    rng = np.random.default_rng(seed)
    first = int(rng.integers(n))
    pivots = [first]
    diff = X - X[first]
    nearest = np.einsum("ij,ij->i", diff, diff)
    nearest[first] = -1.0
    for _ in range(k - 1):
        nxt = int(np.argmax(nearest))
        pivots.append(nxt)
        diff = X - X[nxt]
        np.minimum(nearest, np.einsum("ij,ij->i", diff, diff), out=nearest)
        nearest[nxt] = -1.0
    return pivots


def pivot_mds(
    items: Sequence[Fingerprint],
    m: DistanceMetric,
    k: int | None = None,
    d: int = 2,
    seed: int = 0,
) -> ProjectionLayout:
    """Project fingerprints to d dimensions using distances to k pivots.

    Builds the n x k squared-distance matrix to the chosen pivots,
    double-centers it (row means over pivots, column means over items,
    plus the grand mean), and projects onto the top-d eigenvectors of the
    k x k matrix C'C. Output scale is whatever C w gives; consumers that
    need to compare layouts do so up to a similarity transform.

    Deterministic for a fixed seed. k defaults to min(50, n).
    """
    n = len(items)
    if n == 0:
        raise BadK("no items to project")
    if k is None:
        k = min(DEFAULT_PIVOTS, n)
    if not 1 <= k <= n:
        raise BadK(f"k={k} outside 1..{n}")

    X = np.stack([_axis_values(fp, m.axes) for fp in items])
    pivots = _maxmin_pivots_matrix(X, k, seed)

    P = X[pivots]
    sq = (
        np.einsum("ij,ij->i", X, X)[:, None]
        + np.einsum("ij,ij->i", P, P)[None, :]
        - 2.0 * (X @ P.T)
    )
    np.maximum(sq, 0.0, out=sq)
    C = -0.5 * (
        sq
        - sq.mean(axis=1, keepdims=True)
        - sq.mean(axis=0, keepdims=True)
        + sq.mean()
    )
    try:
        evals, evecs = np.linalg.eigh(C.T @ C)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    order = np.argsort(evals)[::-1]
    coords = np.zeros((n, d))
    for col, idx in enumerate(order[: min(d, k)]):
        coords[:, col] = C @ evecs[:, idx]
    coords = _fix_signs(coords)

    return ProjectionLayout(
        keys=[fp.key for fp in items], coords=coords, pivots=pivots, metric=m
    )


def procrustes_error(A: np.ndarray, B: np.ndarray) -> float:
    """RMS residual after optimally aligning B onto A.

    The alignment allows translation, uniform scaling, rotation, and
    reflection; the residual is therefore zero exactly when the two layouts
    are similar figures.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise LengthMismatch(f"shapes {A.shape} and {B.shape} differ")
    if A.ndim != 2 or A.shape[0] < 1:
        raise LengthMismatch(f"expected (n, d) arrays, got {A.shape}")
    n = A.shape[0]
    Ac = A - A.mean(axis=0)
    Bc = B - B.mean(axis=0)
    norm_b_sq = float((Bc * Bc).sum())
    if norm_b_sq == 0.0:
        return float(np.sqrt((Ac * Ac).sum() / n))
    U, S, Vt = np.linalg.svd(Bc.T @ Ac)
    R = U @ Vt
    s = float(S.sum()) / norm_b_sq
    resid = Ac - s * (Bc @ R)
    return float(np.sqrt((resid * resid).sum() / n))


def layout_rms(A: np.ndarray) -> float:
    """RMS point distance from the centroid; the scale procrustes errors
    are naturally compared against."""
    A = np.asarray(A, dtype=np.float64)
    Ac = A - A.mean(axis=0)
    return float(np.sqrt((Ac * Ac).sum() / A.shape[0]))


def brush_select(
    layout: ProjectionLayout, rect: tuple[float, float, float, float]
) -> BrushSelection:
    """Resolve a rectangular brush into selected and highlighted clusters.

    Selected: every key whose point lies inside the rectangle (boundary
    inclusive). Highlighted: every key in the layout sharing a cluster id
    with any selected key, across all subjects.
    """
    xmin, ymin, xmax, ymax = (float(v) for v in rect)
    if not (xmin <= xmax and ymin <= ymax):
        raise BadRect(f"rect {rect} is not well-ordered")
    xs = layout.coords[:, 0]
    ys = layout.coords[:, 1]
    inside = (xs >= xmin) & (xs <= xmax) & (ys >= ymin) & (ys <= ymax)
    selected = frozenset(k for i, k in enumerate(layout.keys) if inside[i])
    cluster_ids = {k.cluster_id for k in selected}
    highlighted = frozenset(k for k in layout.keys if k.cluster_id in cluster_ids)
    return BrushSelection(rect=(xmin, ymin, xmax, ymax), selected=selected,
                          highlighted=highlighted)
