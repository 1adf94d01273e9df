from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fiberscope import colormaps
from fiberscope.colormaps import ColormapSpec, map_color


def test_registry_has_at_least_eight_maps():
    assert len(colormaps.names()) >= 8


def test_names_unique_and_specs_valid():
    listed = colormaps.names()
    assert len(listed) == len(set(listed))
    for name in listed:
        cmap = colormaps.get(name)
        assert len(cmap.control_points) >= 2
        ts = [t for t, _ in cmap.control_points]
        assert ts[0] == 0.0 and ts[-1] == 1.0


def test_endpoints_map_to_terminal_colors():
    for name in colormaps.names():
        cmap = colormaps.get(name)
        assert map_color(0.0, cmap) == cmap.control_points[0][1]
        assert map_color(1.0, cmap) == cmap.control_points[-1][1]


def test_grayscale_midpoint():
    gray = colormaps.get("grayscale")
    r, g, b = map_color(0.5, gray)
    assert abs(r - 128) <= 1 and abs(g - 128) <= 1 and abs(b - 128) <= 1


def test_out_of_range_clamped():
    gray = colormaps.get("grayscale")
    assert map_color(-2.0, gray) == (0, 0, 0)
    assert map_color(3.0, gray) == (255, 255, 255)


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        ColormapSpec("one-point", ((0.0, (0, 0, 0)),))
    with pytest.raises(ValueError):
        ColormapSpec("unsorted", ((1.0, (0, 0, 0)), (0.0, (1, 1, 1))))
    with pytest.raises(ValueError):
        ColormapSpec("no-cover", ((0.1, (0, 0, 0)), (1.0, (1, 1, 1))))


def test_unknown_name_raises_keyerror():
    with pytest.raises(KeyError):
        colormaps.get("nope")


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_grayscale_monotone_per_channel(v1, v2):
    gray = colormaps.get("grayscale")
    a, b = sorted((v1, v2))
    ca, cb = map_color(a, gray), map_color(b, gray)
    assert all(x <= y for x, y in zip(ca, cb))
