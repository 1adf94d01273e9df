"""Reader for a VTK XML PolyData (VTP) subset carrying fiber clusters.

Supported: one <Piece> of polyline data with inline DataArrays in "ascii" or
"binary" (base64) format and a UInt32 or UInt64 binary header. Points become
fiber coordinates, the Lines connectivity/offsets pair splits them into
fibers, PointData arrays become per-vertex scalars and CellData arrays
per-fiber properties (single-component arrays only; others are ignored).

Not supported, by design: appended data sections, compressed blocks,
big-endian files, multiple pieces. Files using them raise
UnsupportedEncoding rather than being half-read.
"""
from __future__ import annotations

import base64
import binascii
import xml.etree.ElementTree as ET

import numpy as np

from ..errors import (
    ArityMismatch,
    InconsistentOffsets,
    MalformedXml,
    UnsupportedEncoding,
)
from ..model import ClusterGeometry, FiberPolyline

_DTYPES = {
    "Float32": "<f4",
    "Float64": "<f8",
    "Int8": "<i1",
    "Int16": "<i2",
    "Int32": "<i4",
    "Int64": "<i8",
    "UInt8": "<u1",
    "UInt16": "<u2",
    "UInt32": "<u4",
    "UInt64": "<u8",
}

_HEADER_DTYPES = {"UInt32": "<u4", "UInt64": "<u8"}


def _decode_base64_block(text: str, header_dtype: np.dtype) -> bytes:
    """Decode inline base64 content and strip the byte-count header.

    Handles both layouts seen in the wild: header and payload encoded as a
    single base64 stream, or as two concatenated base64 blocks (the header
    padded on its own).
    """
    header_size = header_dtype.itemsize
    compact = "".join(text.split())
    try:
        whole = base64.b64decode(compact, validate=False)
    except (binascii.Error, ValueError):
        whole = b""
    if len(whole) >= header_size:
        declared = int(np.frombuffer(whole, dtype=header_dtype, count=1)[0])
        if len(whole) >= header_size + declared:
            return whole[header_size : header_size + declared]
    # two-block variant: the header occupies its own padded base64 chunk
    header_chars = -(-header_size // 3) * 4
    try:
        head = base64.b64decode(compact[:header_chars])
        body = base64.b64decode(compact[header_chars:])
    except (binascii.Error, ValueError) as exc:
        raise MalformedXml(f"undecodable base64 data array: {exc}") from exc
    if len(head) < header_size:
        raise MalformedXml("base64 data array shorter than its header")
    declared = int(np.frombuffer(head, dtype=header_dtype, count=1)[0])
    if len(body) < declared:
        raise MalformedXml(
            f"base64 data array declares {declared} bytes, has {len(body)}"
        )
    return body[:declared]


def _read_data_array(elem: ET.Element, header_dtype: np.dtype) -> np.ndarray:
    type_name = elem.get("type", "")
    if type_name not in _DTYPES:
        raise UnsupportedEncoding(f"DataArray type {type_name!r} not supported")
    dtype = np.dtype(_DTYPES[type_name])
    fmt = elem.get("format", "ascii")
    text = elem.text or ""
    if fmt == "ascii":
        try:
            flat = np.array(text.split(), dtype=dtype)
        except (ValueError, OverflowError) as exc:
            raise MalformedXml(f"bad ascii data array: {exc}") from exc
    elif fmt == "binary":
        raw = _decode_base64_block(text, header_dtype)
        try:
            flat = np.frombuffer(raw, dtype=dtype).copy()
        except ValueError as exc:
            raise MalformedXml(f"bad binary data array: {exc}") from exc
    elif fmt == "appended":
        raise UnsupportedEncoding("appended data sections are not supported")
    else:
        raise UnsupportedEncoding(f"DataArray format {fmt!r} not supported")
    return flat


def _int_attr(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise MalformedXml(f"{what} attribute {value!r} is not an integer") from exc


def _find_required(parent: ET.Element, tag: str) -> ET.Element:
    child = parent.find(tag)
    if child is None:
        raise MalformedXml(f"missing <{tag}> element")
    return child


def parse_vtp(data: bytes, cluster_id: int = 0) -> ClusterGeometry:
    """Parse VTP bytes into one cluster.

    Fibers follow the Lines cell order; offsets are VTK end-offsets into the
    connectivity array and must be strictly increasing.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc
    if root.tag != "VTKFile":
        raise MalformedXml(f"root element is <{root.tag}>, expected <VTKFile>")
    if root.get("type") != "PolyData":
        raise MalformedXml(f"VTKFile type is {root.get('type')!r}, expected PolyData")
    if root.get("compressor"):
        raise UnsupportedEncoding("compressed data blocks are not supported")
    if root.get("byte_order", "LittleEndian") != "LittleEndian":
        raise UnsupportedEncoding("big-endian files are not supported")
    if root.find("AppendedData") is not None:
        raise UnsupportedEncoding("appended data sections are not supported")
    header_type = root.get("header_type", "UInt32")
    if header_type not in _HEADER_DTYPES:
        raise UnsupportedEncoding(f"header_type {header_type!r} not supported")
    header_dtype = np.dtype(_HEADER_DTYPES[header_type])

    polydata = _find_required(root, "PolyData")
    pieces = polydata.findall("Piece")
    if len(pieces) != 1:
        raise UnsupportedEncoding(f"expected exactly one Piece, found {len(pieces)}")
    piece = pieces[0]

    points_elem = _find_required(_find_required(piece, "Points"), "DataArray")
    coords = _read_data_array(points_elem, header_dtype).astype(np.float64)
    if coords.size % 3 != 0:
        raise ArityMismatch(f"points array length {coords.size} not divisible by 3")
    coords = coords.reshape(-1, 3)
    n_points = coords.shape[0]
    declared_points = piece.get("NumberOfPoints")
    if declared_points is not None and _int_attr(declared_points, "NumberOfPoints") != n_points:
        raise ArityMismatch(
            f"piece declares {declared_points} points, data has {n_points}"
        )

    lines = _find_required(piece, "Lines")
    arrays = {a.get("Name"): a for a in lines.findall("DataArray")}
    if "connectivity" not in arrays or "offsets" not in arrays:
        raise MalformedXml("Lines element needs connectivity and offsets arrays")
    connectivity = _read_data_array(arrays["connectivity"], header_dtype).astype(
        np.int64
    )
    offsets = _read_data_array(arrays["offsets"], header_dtype).astype(np.int64)
    if offsets.size and (offsets[0] <= 0 or np.any(np.diff(offsets) <= 0)):
        raise InconsistentOffsets(f"offsets {offsets.tolist()} not strictly increasing")
    if offsets.size and offsets[-1] > connectivity.size:
        raise InconsistentOffsets(
            f"last offset {offsets[-1]} exceeds connectivity length "
            f"{connectivity.size}"
        )
    if connectivity.size and (
        connectivity.min() < 0 or connectivity.max() >= n_points
    ):
        raise InconsistentOffsets("connectivity index outside the point range")
    n_cells = offsets.size

    scalar_names: list[str] = []
    point_arrays: dict[str, np.ndarray] = {}
    point_data = piece.find("PointData")
    if point_data is not None:
        for elem in point_data.findall("DataArray"):
            if _int_attr(elem.get("NumberOfComponents", "1"), "NumberOfComponents") != 1:
                continue
            name = elem.get("Name", f"scalar{len(scalar_names)}")
            values = _read_data_array(elem, header_dtype).astype(np.float64)
            if values.size != n_points:
                raise ArityMismatch(
                    f"PointData '{name}' has {values.size} values for "
                    f"{n_points} points"
                )
            scalar_names.append(name)
            point_arrays[name] = values

    property_names: list[str] = []
    properties: dict[str, np.ndarray] = {}
    cell_data = piece.find("CellData")
    if cell_data is not None:
        for elem in cell_data.findall("DataArray"):
            if _int_attr(elem.get("NumberOfComponents", "1"), "NumberOfComponents") != 1:
                continue
            name = elem.get("Name", f"property{len(property_names)}")
            values = _read_data_array(elem, header_dtype).astype(np.float64)
            if values.size != n_cells:
                raise ArityMismatch(
                    f"CellData '{name}' has {values.size} values for "
                    f"{n_cells} lines"
                )
            property_names.append(name)
            properties[name] = values

    fibers = []
    start = 0
    for end in offsets:
        idx = connectivity[start:end]
        fibers.append(
            FiberPolyline(
                points=coords[idx],
                per_vertex_scalars={
                    name: point_arrays[name][idx] for name in scalar_names
                },
            )
        )
        start = int(end)

    return ClusterGeometry(
        cluster_id=cluster_id,
        fibers=fibers,
        per_fiber_properties=properties,
        scalar_names=scalar_names,
        property_names=property_names,
    )
