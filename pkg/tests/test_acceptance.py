"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to get one PASS line per
criterion. Tolerances and counts are fixed here, not configurable.
"""
from __future__ import annotations

import json
import resource
import socket
import struct
import subprocess
import sys
import time

import numpy as np
import pytest
from click.testing import CliRunner

from fiberscope.cli import main as cli_main
from fiberscope.io.trk import parse_trk, write_trk
from fiberscope.io.vtp import parse_vtp
from fiberscope.model import ClusterGeometry, ClusterKey, geometries_equal
from fiberscope.projection import (
    DistanceMetric,
    ProjectionLayout,
    brush_select,
    classical_mds,
    layout_rms,
    pivot_mds,
    procrustes_error,
)
from fiberscope.stats import Fingerprint, cluster_summary, cohort_ranges, fingerprint
from fiberscope.synthetic import STUDY_CLUSTER_IDS, make_cluster, vtp_bytes
from helpers import brute_force_summary, random_cluster, rel_close

KEY = ClusterKey("acc", 0)


def _passed(line: str) -> None:
    print(f"ACCEPTANCE PASS: {line}")


def test_trk_round_trip_200_random_clusters():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    for trial in range(200):
        g = random_cluster(
            rng,
            cluster_id=trial,
            max_fibers=10,
            max_points=10,
            max_scalars=10,
            max_properties=10,
            nan_fraction=0.05 if trial % 4 == 0 else 0.0,
        )
        back = parse_trk(write_trk(g), cluster_id=trial)
        assert geometries_equal(g, back), f"round trip broke at trial {trial}"
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"round trips took {elapsed:.2f}s, budget 5s"
    _passed(f"TRK round-trip bit-exact on 200 random clusters in {elapsed:.2f}s")


def test_vtp_trk_cross_format_fixture():
    rng = np.random.default_rng(99)
    g = make_cluster(rng, 17, n_fibers=9)
    from_trk = parse_trk(write_trk(g), cluster_id=17)
    for fmt, header in (("ascii", "UInt32"), ("binary", "UInt32"), ("binary", "UInt64")):
        from_vtp = parse_vtp(vtp_bytes(g, fmt, header_type=header), cluster_id=17)
        assert geometries_equal(from_trk, from_vtp), f"{fmt}/{header} disagrees"
    _passed("VTP and TRK fixtures parse to float32-identical geometry")


def test_aggregation_matches_brute_force_oracle():
    rng = np.random.default_rng(7)
    for trial in range(100):
        g = random_cluster(
            rng,
            max_fibers=10,
            max_points=20,
            nan_fraction=0.1 if trial % 5 == 0 else 0.0,
        )
        s = cluster_summary(g, KEY)
        want = brute_force_summary(g)
        assert s.fiber_count == want["fiber_count"]
        assert rel_close(s.mean_fiber_length, want["mean_fiber_length"])
        assert set(s.per_scalar) == set(want["per_scalar"])
        assert set(s.per_property) == set(want["per_property"])
        for name, expected in want["per_scalar"].items():
            got = s.per_scalar[name]
            for field in ("mean", "std", "min", "max"):
                assert rel_close(getattr(got, field), expected[field]), (
                    trial, name, field,
                )
        for name, expected in want["per_property"].items():
            got = s.per_property[name]
            for field in ("mean", "std", "min", "max"):
                assert rel_close(getattr(got, field), expected[field]), (
                    trial, name, field,
                )
    _passed("cluster aggregation matches two-pass oracle on 100 clusters @1e-12")


def test_classical_mds_recovers_planar_configurations():
    rng = np.random.default_rng(11)
    for trial in range(50):
        n = int(rng.integers(3, 31))
        points = rng.uniform(-100.0, 100.0, size=(n, 2))
        D = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
        coords = classical_mds(D, 2)
        rms = layout_rms(points)
        err = procrustes_error(points, coords)
        assert err <= 1e-8 * rms, f"trial {trial}: {err} > 1e-8 * {rms}"
    _passed("classical scaling recovers 50 planar configs within 1e-8 RMS")


def _grid_fingerprints(side: int = 10) -> list[Fingerprint]:
    return [
        Fingerprint(
            ClusterKey("g", i * side + j),
            ("ax0", "ax1"),
            (i / (side - 1), j / (side - 1)),
        )
        for i in range(side)
        for j in range(side)
    ]


def test_pivot_mds_against_classical_oracle():
    fps = _grid_fingerprints()
    metric = DistanceMetric(axes=("ax0", "ax1"))
    X = np.array([fp.values for fp in fps])
    D = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=-1)
    oracle = classical_mds(D, 2)
    rms = layout_rms(oracle)

    full = pivot_mds(fps, metric, k=len(fps), seed=7)
    err_full = procrustes_error(oracle, full.coords)
    assert err_full <= 1e-6 * rms, f"k=n error {err_full} > 1e-6 * {rms}"

    sparse = pivot_mds(fps, metric, k=25, seed=1)
    err_sparse = procrustes_error(oracle, sparse.coords)
    assert err_sparse <= 0.05 * rms, f"k=25 error {err_sparse} > 5% * {rms}"
    _passed(
        f"pivot layout vs oracle: k=n err {err_full / rms:.2e} RMS, "
        f"k=25 err {err_sparse / rms:.2%} RMS"
    )


def test_projection_scales_to_full_collection_size():
    # 67 subjects x 800 clusters, the largest collection shape we target
    rng = np.random.default_rng(42)
    axes = ("fa1", "fa2", "len_norm", "rtop", "rtpp", "uncert")
    fps = []
    for si in range(67):
        sid = f"sub-{si:03d}"
        values = rng.uniform(0.0, 1.0, size=(800, len(axes)))
        fps.extend(
            Fingerprint(ClusterKey(sid, ci), axes, tuple(values[ci]))
            for ci in range(800)
        )
    assert len(fps) == 53_600
    metric = DistanceMetric(axes=axes)
    start = time.perf_counter()
    layout = pivot_mds(fps, metric, k=100, d=2, seed=3)
    elapsed = time.perf_counter() - start
    peak_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / (1024**2)
    assert layout.coords.shape == (53_600, 2)
    assert np.isfinite(layout.coords).all()
    assert elapsed < 10.0, f"pivot layout took {elapsed:.2f}s, budget 10s"
    assert peak_gb < 2.0, f"peak RSS {peak_gb:.2f} GB, budget 2 GB"
    _passed(f"53,600-point layout in {elapsed:.2f}s, peak RSS {peak_gb:.2f} GB")


def test_brushing_contract_on_1000_random_layouts():
    rng = np.random.default_rng(5)
    metric = DistanceMetric(axes=("a",))
    for trial in range(1000):
        n_subjects = int(rng.integers(1, 6))
        keys = [
            ClusterKey(f"s{s}", int(c))
            for s in range(n_subjects)
            for c in rng.choice(30, size=int(rng.integers(1, 10)), replace=False)
        ]
        coords = rng.uniform(-10.0, 10.0, size=(len(keys), 2))
        layout = ProjectionLayout(keys=keys, coords=coords, pivots=[0], metric=metric)
        x0, y0 = rng.uniform(-12.0, 12.0, size=2)
        w, h = rng.uniform(0.0, 15.0, size=2)
        rect = (x0, y0, x0 + w, y0 + h)
        inner = brush_select(layout, rect)
        assert inner.selected <= inner.highlighted
        ids = {k.cluster_id for k in inner.selected}
        assert inner.highlighted == {k for k in keys if k.cluster_id in ids}
        grow = rng.uniform(0.0, 4.0, size=2)
        outer = brush_select(
            layout,
            (x0 - grow[0], y0 - grow[1], x0 + w + grow[0], y0 + h + grow[1]),
        )
        assert inner.selected <= outer.selected
        assert inner.highlighted <= outer.highlighted
    _passed("brushing contract holds on 1000 random layouts and rectangles")


def _free_port() -> int:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_study_fixture_end_to_end(study_cohort_dir, tmp_path):
    runner = CliRunner()

    scan = runner.invoke(cli_main, ["scan", str(study_cohort_dir)])
    assert scan.exit_code == 0
    assert "5 subjects, 80 clusters" in scan.output

    summaries_path = tmp_path / "summaries.json"
    summarize = runner.invoke(
        cli_main, ["summarize", str(study_cohort_dir), "--out", str(summaries_path)]
    )
    assert summarize.exit_code == 0
    assert len(json.loads(summaries_path.read_text())) == 80

    layout_path = tmp_path / "layout.json"
    project = runner.invoke(
        cli_main,
        ["project", str(study_cohort_dir), "--axes", "fa1,fa2", "--k", "20",
         "--seed", "7", "--out", str(layout_path)],
    )
    assert project.exit_code == 0
    assert len(json.loads(layout_path.read_text())) == 80

    port = _free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "fiberscope", "serve", str(study_cohort_dir),
         "--port", str(port)],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
    )
    try:
        import httpx

        body = None
        deadline = time.time() + 20.0
        while time.time() < deadline:
            try:
                response = httpx.get(f"http://127.0.0.1:{port}/api/cohort", timeout=2.0)
                if response.status_code == 200:
                    body = response.json()
                    break
            except httpx.TransportError:
                time.sleep(0.1)
        assert body is not None, "server never answered /api/cohort"
        assert len(body["subjects"]) == 5
        for subject in body["subjects"]:
            assert subject["cluster_ids"] == sorted(STUDY_CLUSTER_IDS)
            assert len(subject["cluster_ids"]) == 16
    finally:
        proc.terminate()
        proc.wait(timeout=10)
    _passed("study fixture scans, summarizes, projects, and serves end-to-end")


def test_normalization_bounds_and_extremes():
    rng = np.random.default_rng(31)
    clusters = [random_cluster(rng, cluster_id=i, max_scalars=4, max_properties=2,
                               max_fibers=6) for i in range(40)]
    summaries = [
        cluster_summary(g, ClusterKey(f"s{i % 5}", i)) for i, g in enumerate(clusters)
    ]
    ranges = cohort_ranges(summaries)
    axes = sorted(ranges)
    fps = [fingerprint(s, ranges, axes) for s in summaries]
    per_axis: dict[str, list[float]] = {a: [] for a in axes}
    for fp in fps:
        for axis, value in zip(fp.axis_names, fp.values):
            assert 0.0 <= value <= 1.0
            per_axis[axis].append(value)
    for axis, values in per_axis.items():
        lo, hi = ranges[axis]
        if lo < hi:
            assert min(values) == 0.0, f"axis {axis} never reaches 0"
            assert max(values) == 1.0, f"axis {axis} never reaches 1"

    # degenerate range: all clusters share the same mean on this axis
    flat = [
        fingerprint(s, {"flat": (3.0, 3.0)}, ["flat"]) for s in summaries
    ]
    assert all(fp.values == (0.5,) for fp in flat)
    _passed("fingerprints stay in [0,1], attain extremes, degenerate gives 0.5")
