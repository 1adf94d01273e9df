"""Piecewise-linear colormaps for scalar-to-RGB mapping in the 3D views."""
from __future__ import annotations

import bisect
from dataclasses import dataclass

RGB = tuple[int, int, int]


@dataclass(frozen=True)
class ColormapSpec:
    """Named colormap as (t, rgb) control points with t covering 0..1."""

    name: str
    control_points: tuple[tuple[float, RGB], ...]

    def __post_init__(self) -> None:
        ts = [t for t, _ in self.control_points]
        if len(ts) < 2:
            raise ValueError(f"colormap {self.name!r} needs >= 2 control points")
        if ts != sorted(ts):
            raise ValueError(f"colormap {self.name!r} control points not sorted")
        if ts[0] != 0.0 or ts[-1] != 1.0:
            raise ValueError(f"colormap {self.name!r} must cover t=0 and t=1")


def map_color(v: float, cmap: ColormapSpec) -> RGB:
    """Interpolate the colormap at v (clamped to [0,1])."""
    v = 0.0 if not v == v else min(max(float(v), 0.0), 1.0)  # NaN -> 0
    pts = cmap.control_points
    ts = [t for t, _ in pts]
    i = bisect.bisect_right(ts, v)
    if i <= 0:
        return pts[0][1]
    if i >= len(pts):
        return pts[-1][1]
    (t0, c0), (t1, c1) = pts[i - 1], pts[i]
    w = 0.0 if t1 == t0 else (v - t0) / (t1 - t0)
    return tuple(round(a + (b - a) * w) for a, b in zip(c0, c1))


def _cmap(name: str, *points: tuple[float, RGB]) -> ColormapSpec:
    return ColormapSpec(name=name, control_points=tuple(points))


_BUILTINS = [
    _cmap("grayscale", (0.0, (0, 0, 0)), (1.0, (255, 255, 255))),
    _cmap(
        "viridis",
        (0.0, (68, 1, 84)),
        (0.25, (59, 82, 139)),
        (0.5, (33, 145, 140)),
        (0.75, (94, 201, 98)),
        (1.0, (253, 231, 37)),
    ),
    _cmap(
        "plasma",
        (0.0, (12, 7, 134)),
        (0.25, (126, 3, 168)),
        (0.5, (203, 71, 119)),
        (0.75, (248, 149, 64)),
        (1.0, (239, 248, 33)),
    ),
    _cmap(
        "inferno",
        (0.0, (0, 0, 4)),
        (0.25, (87, 16, 110)),
        (0.5, (188, 55, 84)),
        (0.75, (249, 142, 9)),
        (1.0, (252, 255, 164)),
    ),
    _cmap(
        "rainbow",
        (0.0, (0, 0, 255)),
        (0.25, (0, 255, 255)),
        (0.5, (0, 255, 0)),
        (0.75, (255, 255, 0)),
        (1.0, (255, 0, 0)),
    ),
    _cmap(
        "red-blue",
        (0.0, (59, 76, 192)),
        (0.5, (221, 221, 221)),
        (1.0, (180, 4, 38)),
    ),
    _cmap(
        "hot",
        (0.0, (0, 0, 0)),
        (0.4, (230, 0, 0)),
        (0.8, (255, 210, 0)),
        (1.0, (255, 255, 255)),
    ),
    _cmap(
        "cool",
        (0.0, (0, 255, 255)),
        (1.0, (255, 0, 255)),
    ),
    _cmap(
        "spring-green",
        (0.0, (247, 252, 245)),
        (0.5, (116, 196, 118)),
        (1.0, (0, 68, 27)),
    ),
    _cmap(
        "copper",
        (0.0, (0, 0, 0)),
        (0.8, (255, 160, 102)),
        (1.0, (255, 199, 127)),
    ),
]

REGISTRY: dict[str, ColormapSpec] = {c.name: c for c in _BUILTINS}


def names() -> list[str]:
    return sorted(REGISTRY)


def get(name: str) -> ColormapSpec:
    """Look up a registered colormap; KeyError if unknown."""
    return REGISTRY[name]
