"""TrackVis TRK reader and writer.

Fixed little-endian 1000-byte header followed by track records. Byte offsets:

    0    id_string       char[6]   must start with "TRACK"
    6    dim             int16[3]
    12   voxel_size      float32[3]
    24   origin          float32[3]
    36   n_scalars       int16
    38   scalar_name     char[10][20]
    238  n_properties    int16
    240  property_name   char[10][20]
    440  vox_to_ras      float32[4][4]
    504  reserved/orientation bytes, preserved verbatim on round-trip
    988  n_count         int32     0 means "count unknown"
    992  version         int32
    996  hdr_size        int32     must be 1000

Each track record is an int32 point count, then n_points x (3 + n_scalars)
float32 (x, y, z, scalars...), then n_properties float32. Records run to the
end of the stream; n_count is written but not trusted when reading.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    BadHeaderSize,
    BadMagic,
    CountOverflow,
    NameTooLong,
    TooManyFields,
    Truncated,
)
from ..model import ClusterGeometry, FiberPolyline

HEADER_SIZE = 1000
MAX_FIELDS = 10
NAME_BYTES = 20

_FIXED = struct.Struct("<6s3h3f3fh200sh200s16f")
_TAIL = struct.Struct("<3i")
_RESERVED_START = _FIXED.size  # 504
_RESERVED_END = HEADER_SIZE - _TAIL.size  # 988


@dataclass
class TrkHeader:
    """Parsed TRK header. `reserved` keeps bytes 504..988 verbatim."""

    id_string: bytes = b"TRACK\x00"
    dim: tuple[int, int, int] = (0, 0, 0)
    voxel_size: tuple[float, float, float] = (1.0, 1.0, 1.0)
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)
    n_scalars: int = 0
    scalar_names: list[str] = field(default_factory=list)
    n_properties: int = 0
    property_names: list[str] = field(default_factory=list)
    vox_to_ras: np.ndarray = field(default_factory=lambda: np.eye(4, dtype=np.float32))
    reserved: bytes = b"\x00" * (_RESERVED_END - _RESERVED_START)
    n_count: int = 0
    version: int = 2
    hdr_size: int = HEADER_SIZE


def _split_names(blob: bytes, count: int) -> list[str]:
    names = []
    for i in range(count):
        raw = blob[i * NAME_BYTES : (i + 1) * NAME_BYTES]
        names.append(raw.split(b"\x00", 1)[0].decode("utf-8", errors="replace"))
    return names


def parse_trk_header(data: bytes) -> TrkHeader:
    """Decode and validate the 1000-byte header."""
    if len(data) < HEADER_SIZE:
        raise Truncated(f"need {HEADER_SIZE} header bytes, got {len(data)}")
    fields = _FIXED.unpack_from(data, 0)
    id_string = fields[0]
    if not id_string.startswith(b"TRACK"):
        raise BadMagic(f"id_string {id_string!r} does not start with 'TRACK'")
    n_count, version, hdr_size = _TAIL.unpack_from(data, _RESERVED_END)
    if hdr_size != HEADER_SIZE:
        raise BadHeaderSize(f"hdr_size is {hdr_size}, expected {HEADER_SIZE}")
    n_scalars = fields[10]
    n_properties = fields[12]
    if not 0 <= n_scalars <= MAX_FIELDS:
        raise CountOverflow(f"n_scalars {n_scalars} outside 0..{MAX_FIELDS}")
    if not 0 <= n_properties <= MAX_FIELDS:
        raise CountOverflow(f"n_properties {n_properties} outside 0..{MAX_FIELDS}")
    return TrkHeader(
        id_string=id_string,
        dim=tuple(fields[1:4]),
        voxel_size=tuple(fields[4:7]),
        origin=tuple(fields[7:10]),
        n_scalars=n_scalars,
        scalar_names=_split_names(fields[11], n_scalars),
        n_properties=n_properties,
        property_names=_split_names(fields[13], n_properties),
        vox_to_ras=np.array(fields[14:30], dtype=np.float32).reshape(4, 4),
        reserved=data[_RESERVED_START:_RESERVED_END],
        n_count=n_count,
        version=version,
        hdr_size=hdr_size,
    )


def parse_trk(data: bytes, cluster_id: int = 0) -> ClusterGeometry:
    """Parse a whole TRK byte buffer into one cluster.

    Fibers keep file order. Scalar and property names come from the header
    with trailing NULs stripped; the caller supplies the cluster id (the
    format does not store one).
    """
    header = parse_trk_header(data)
    n_scalars, n_properties = header.n_scalars, header.n_properties
    floats_per_point = 3 + n_scalars

    fibers: list[FiberPolyline] = []
    prop_rows: list[np.ndarray] = []
    pos = HEADER_SIZE
    end = len(data)
    track = 0
    while pos < end:
        if end - pos < 4:
            raise Truncated(f"track {track}: point count cut off at byte {pos}")
        (n_points,) = struct.unpack_from("<i", data, pos)
        pos += 4
        if n_points < 0:
            raise Truncated(f"track {track}: negative point count {n_points}")
        n_floats = n_points * floats_per_point + n_properties
        nbytes = 4 * n_floats
        if end - pos < nbytes:
            raise Truncated(
                f"track {track}: record needs {nbytes} bytes, {end - pos} left"
            )
        values = np.frombuffer(data, dtype="<f4", count=n_floats, offset=pos)
        pos += nbytes
        point_block = values[: n_points * floats_per_point].reshape(
            n_points, floats_per_point
        )
        with np.errstate(invalid="ignore"):  # signaling-NaN payloads stay quiet
            scalars = {
                name: point_block[:, 3 + i].astype(np.float64)
                for i, name in enumerate(header.scalar_names)
            }
            fibers.append(
                FiberPolyline(
                    points=point_block[:, :3].astype(np.float64),
                    per_vertex_scalars=scalars,
                )
            )
            prop_rows.append(
                values[n_points * floats_per_point :].astype(np.float64)
            )
        track += 1

    properties = {
        name: np.array([row[i] for row in prop_rows], dtype=np.float64)
        for i, name in enumerate(header.property_names)
    }
    return ClusterGeometry(
        cluster_id=cluster_id,
        fibers=fibers,
        per_fiber_properties=properties,
        scalar_names=list(header.scalar_names),
        property_names=list(header.property_names),
    )


def _pack_names(names: list[str]) -> bytes:
    blob = bytearray(MAX_FIELDS * NAME_BYTES)
    for i, name in enumerate(names):
        raw = name.encode("utf-8")
        if len(raw) > NAME_BYTES - 1 or b"\x00" in raw:
            raise NameTooLong(
                f"name {name!r} does not fit a NUL-terminated {NAME_BYTES}-byte slot"
            )
        blob[i * NAME_BYTES : i * NAME_BYTES + len(raw)] = raw
    return bytes(blob)


def write_trk(g: ClusterGeometry, header: TrkHeader | None = None) -> bytes:
    """Serialize a cluster to TRK bytes; inverse of parse_trk.

    Scalar and property counts/names are always taken from the geometry.
    Passing the header returned by parse_trk_header carries the voxel
    grid, orientation, and reserved bytes through unchanged.
    """
    if len(g.scalar_names) > MAX_FIELDS:
        raise TooManyFields(f"{len(g.scalar_names)} scalars, limit {MAX_FIELDS}")
    if len(g.property_names) > MAX_FIELDS:
        raise TooManyFields(f"{len(g.property_names)} properties, limit {MAX_FIELDS}")
    h = header if header is not None else TrkHeader()

    buf = bytearray()
    buf += _FIXED.pack(
        b"TRACK\x00",
        *h.dim,
        *h.voxel_size,
        *h.origin,
        len(g.scalar_names),
        _pack_names(g.scalar_names),
        len(g.property_names),
        _pack_names(g.property_names),
        *np.asarray(h.vox_to_ras, dtype=np.float32).reshape(16),
    )
    reserved = h.reserved[: _RESERVED_END - _RESERVED_START]
    buf += reserved + b"\x00" * (_RESERVED_END - _RESERVED_START - len(reserved))
    buf += _TAIL.pack(g.n_fibers, h.version, HEADER_SIZE)
    assert len(buf) == HEADER_SIZE

    for fi, f in enumerate(g.fibers):
        block = np.empty((f.n_points, 3 + len(g.scalar_names)), dtype="<f4")
        block[:, :3] = f.points
        for i, name in enumerate(g.scalar_names):
            block[:, 3 + i] = f.per_vertex_scalars[name]
        buf += struct.pack("<i", f.n_points)
        buf += block.tobytes()
        if g.property_names:
            props = np.array(
                [g.per_fiber_properties[name][fi] for name in g.property_names],
                dtype="<f4",
            )
            buf += props.tobytes()
    return bytes(buf)
