"""Deterministic synthetic cohorts for tests, demos, and benchmarks.

Generates smooth random fiber bundles with the scalar/property fields our
collaborating datasets carry (fa1, fa2, estimated_uncertainty per vertex;
total_fiber_similarity per fiber), writes them as TRK or VTP, and lays a
study-style cohort on disk: N subjects, every 50th cluster id of 800, plus
a metadata CSV with id, age, gender, weight, and height.

All values are quantized to float32 so geometry survives the TRK storage
width bit for bit.
"""
from __future__ import annotations

import base64
import csv
import io
import struct
from pathlib import Path

import numpy as np

from .io.trk import write_trk
from .model import ClusterGeometry, FiberPolyline

SCALAR_FIELDS = ("fa1", "fa2", "est_uncertainty")
PROPERTY_FIELDS = ("fiber_similarity",)

STUDY_SUBJECT_COUNT = 5
STUDY_CLUSTER_IDS = tuple(range(0, 800, 50))  # every 50th of 800 -> 16


def _f32(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=np.float32).astype(np.float64)


def make_cluster(
    rng: np.random.Generator,
    cluster_id: int,
    n_fibers: int = 8,
    points_per_fiber: tuple[int, int] = (6, 20),
    scalar_names: tuple[str, ...] = SCALAR_FIELDS,
    property_names: tuple[str, ...] = PROPERTY_FIELDS,
) -> ClusterGeometry:
    """One random bundle: noisy parallel streamlines around a curved spine."""
    origin = rng.uniform(-60.0, 60.0, size=3)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    fibers = []
    for _ in range(n_fibers):
        n_pts = int(rng.integers(points_per_fiber[0], points_per_fiber[1] + 1))
        t = np.linspace(0.0, 1.0, n_pts)[:, None]
        bend = np.sin(t * np.pi * rng.uniform(0.5, 1.5)) * rng.normal(size=3) * 8.0
        jitter = rng.normal(scale=0.6, size=(n_pts, 3))
        pts = origin + rng.normal(scale=2.0, size=3) + t * direction * 80.0 + bend + jitter
        scalars = {}
        for name in scalar_names:
            if name == "est_uncertainty":
                base = rng.uniform(-50.0, 22000.0)
                values = base + rng.normal(scale=150.0, size=n_pts)
            else:
                base = rng.uniform(0.1, 0.9)
                values = np.clip(base + rng.normal(scale=0.05, size=n_pts), 0.0, 1.0)
            scalars[name] = _f32(values)
        fibers.append(FiberPolyline(points=_f32(pts), per_vertex_scalars=scalars))
    properties = {
        name: _f32(rng.uniform(0.0, 1.0, size=n_fibers)) for name in property_names
    }
    return ClusterGeometry(
        cluster_id=cluster_id,
        fibers=fibers,
        per_fiber_properties=properties,
        scalar_names=list(scalar_names),
        property_names=list(property_names),
    )


def _ascii_array(values: np.ndarray) -> str:
    return " ".join(repr(v) for v in values.tolist())


def _binary_array(values: np.ndarray, dtype: str, header_type: str) -> str:
    raw = np.asarray(values, dtype=dtype).tobytes()
    header_fmt = "<I" if header_type == "UInt32" else "<Q"
    return base64.b64encode(struct.pack(header_fmt, len(raw)) + raw).decode("ascii")


def vtp_bytes(
    g: ClusterGeometry, fmt: str = "ascii", header_type: str = "UInt32"
) -> bytes:
    """Serialize a cluster as inline-VTP XML (fixture writer).

    fmt is "ascii" or "binary" (single-block base64). Coordinates and values
    are written as Float32, connectivity as Int64.
    """
    if fmt not in ("ascii", "binary"):
        raise ValueError(f"unsupported fixture format {fmt!r}")

    coords = np.concatenate([f.points for f in g.fibers]) if g.fibers else np.empty((0, 3))
    counts = [f.n_points for f in g.fibers]
    connectivity = np.arange(sum(counts), dtype=np.int64)
    offsets = np.cumsum(counts, dtype=np.int64)

    def emit(values: np.ndarray, dtype: str) -> tuple[str, str]:
        if fmt == "ascii":
            return "ascii", _ascii_array(np.asarray(values, dtype=dtype))
        return "binary", _binary_array(values, dtype, header_type)

    out = io.StringIO()
    out.write(
        f'<VTKFile type="PolyData" version="1.0" byte_order="LittleEndian" '
        f'header_type="{header_type}">\n'
    )
    out.write("  <PolyData>\n")
    out.write(
        f'    <Piece NumberOfPoints="{coords.shape[0]}" NumberOfVerts="0" '
        f'NumberOfLines="{len(counts)}" NumberOfStrips="0" NumberOfPolys="0">\n'
    )
    f, body = emit(coords.reshape(-1), "<f4")
    out.write('      <Points>\n')
    out.write(
        f'        <DataArray type="Float32" NumberOfComponents="3" '
        f'format="{f}">{body}</DataArray>\n'
    )
    out.write("      </Points>\n")
    out.write("      <Lines>\n")
    f, body = emit(connectivity, "<i8")
    out.write(
        f'        <DataArray type="Int64" Name="connectivity" format="{f}">'
        f"{body}</DataArray>\n"
    )
    f, body = emit(offsets, "<i8")
    out.write(
        f'        <DataArray type="Int64" Name="offsets" format="{f}">'
        f"{body}</DataArray>\n"
    )
    out.write("      </Lines>\n")
    out.write("      <PointData>\n")
    for name in g.scalar_names:
        values = np.concatenate([fib.per_vertex_scalars[name] for fib in g.fibers])
        f, body = emit(values, "<f4")
        out.write(
            f'        <DataArray type="Float32" Name="{name}" format="{f}">'
            f"{body}</DataArray>\n"
        )
    out.write("      </PointData>\n")
    out.write("      <CellData>\n")
    for name in g.property_names:
        f, body = emit(g.per_fiber_properties[name], "<f4")
        out.write(
            f'        <DataArray type="Float32" Name="{name}" format="{f}">'
            f"{body}</DataArray>\n"
        )
    out.write("      </CellData>\n")
    out.write("    </Piece>\n  </PolyData>\n</VTKFile>\n")
    return out.getvalue().encode("utf-8")


def write_fixture_cohort(
    root: Path | str,
    n_subjects: int = STUDY_SUBJECT_COUNT,
    cluster_ids: tuple[int, ...] = STUDY_CLUSTER_IDS,
    seed: int = 7,
    n_fibers: int = 8,
) -> Path:
    """Lay a study-style cohort on disk: subject dirs, mixed TRK/VTP, CSV.

    Alternates file formats per cluster so scans exercise both readers.
    Deterministic for a fixed seed.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    genders = ("F", "M")
    rows = []
    for si in range(n_subjects):
        subject_id = f"sub-{si + 1:02d}"
        subject_dir = root / subject_id
        subject_dir.mkdir(exist_ok=True)
        rows.append(
            {
                "subject_id": subject_id,
                "age": str(int(rng.integers(18, 40))),
                "gender": genders[int(rng.integers(2))],
                "weight": str(int(rng.integers(50, 95))),
                "height": str(int(rng.integers(150, 195))),
            }
        )
        for ci, cluster_id in enumerate(cluster_ids):
            g = make_cluster(rng, cluster_id, n_fibers=n_fibers)
            if ci % 2 == 0:
                (subject_dir / f"cluster_{cluster_id:05d}.trk").write_bytes(
                    write_trk(g)
                )
            else:
                (subject_dir / f"cluster_{cluster_id:05d}.vtp").write_bytes(
                    vtp_bytes(g)
                )
    with open(root / "metadata.csv", "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["subject_id", "age", "gender", "weight", "height"]
        )
        writer.writeheader()
        writer.writerows(rows)
    return root
