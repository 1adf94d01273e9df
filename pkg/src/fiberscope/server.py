"""Read-only HTTP API over a loaded cohort.

Every endpoint is idempotent; identical projection requests return cached,
byte-identical bodies. Long projection computations are bounded by a
timeout (default 60 s) and answer 504 when exceeded. Typed errors map to
status codes: unknown subject/axis/scalar/colormap or a bad rectangle are
400, a bad pivot count is 422, unknown entities or layout keys are 404, and
a server started without a cohort answers 503 everywhere.
"""
from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import colormaps
from .errors import AxisMissing, BadK, BadRect, UnknownAxis, UnknownSubject
from .model import ClusterKey
from .projection import brush_select
from .stats import minmax_normalize
from .store import CohortStore, stable_dumps

DEFAULT_TIMEOUT_S = 60.0


class ProjectionRequest(BaseModel):
    subjects: list[str]
    axes: list[str] = []
    k: int | None = None
    seed: int = 0


class BrushRequest(BaseModel):
    layout_key: str
    rect: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax


def _json_response(payload) -> Response:
    return Response(content=stable_dumps(payload), media_type="application/json")


def create_app(
    store: CohortStore | None,
    request_timeout: float = DEFAULT_TIMEOUT_S,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    app = FastAPI(title="fiberscope")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    executor = ThreadPoolExecutor(max_workers=4)

    def require_store() -> CohortStore:
        if store is None:
            raise HTTPException(status_code=503, detail="no cohort loaded")
        return store

    def require_key(s: CohortStore, subject: str, cluster: int) -> ClusterKey:
        if s.manifest.lookup(subject, cluster) is None:
            raise HTTPException(
                status_code=404, detail=f"no cluster {subject}/{cluster}"
            )
        return ClusterKey(subject, cluster)

    @app.get("/api/cohort")
    def cohort_index() -> Response:
        s = require_store()
        snapshot = s.cohort()
        return _json_response(
            {
                "subjects": [
                    {
                        "subject_id": rec.subject_id,
                        "metadata": rec.metadata,
                        "cluster_ids": sorted(rec.cluster_index),
                    }
                    for rec in snapshot.subjects
                ],
                "fields": sorted(snapshot.scalar_ranges),
                "scalar_ranges": {
                    name: list(r) for name, r in snapshot.scalar_ranges.items()
                },
                "loaded_clusters": s.loaded_count(),
            }
        )

    @app.post("/api/projection")
    def projection(req: ProjectionRequest) -> Response:
        s = require_store()
        future = executor.submit(
            s.projection, req.subjects, req.axes or None, req.k, req.seed
        )
        try:
            _, _, body = future.result(timeout=request_timeout)
        except FutureTimeout:
            raise HTTPException(status_code=504, detail="projection timed out")
        except (UnknownSubject, UnknownAxis, AxisMissing) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except BadK as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return Response(content=body, media_type="application/json")

    @app.post("/api/brush")
    def brush(req: BrushRequest) -> Response:
        s = require_store()
        layout = s.layout_by_key(req.layout_key)
        if layout is None:
            raise HTTPException(
                status_code=404, detail=f"unknown layout_key {req.layout_key!r}"
            )
        try:
            selection = brush_select(layout, req.rect)
        except BadRect as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        def as_records(keys):
            ordered = sorted(keys, key=lambda k: (k.subject_id, k.cluster_id))
            return [
                {"subject_id": k.subject_id, "cluster_id": k.cluster_id}
                for k in ordered
            ]

        return _json_response(
            {
                "selected": as_records(selection.selected),
                "highlighted": as_records(selection.highlighted),
            }
        )

    @app.get("/api/clusters/{subject}/{cluster}/summary")
    def summary(subject: str, cluster: int) -> Response:
        s = require_store()
        key = require_key(s, subject, cluster)
        return _json_response(s.summary(key).as_dict())

    @app.get("/api/clusters/{subject}/{cluster}/fingerprint")
    def cluster_fingerprint(
        subject: str,
        cluster: int,
        axes: str = Query(default=""),
        subjects: str = Query(default=""),
    ) -> Response:
        """Fingerprint of one cluster.

        `axes` is comma-separated (default: every known field). `subjects`
        restricts the normalization context; default is the whole cohort so
        hover radars are stable regardless of the current selection.
        """
        s = require_store()
        key = require_key(s, subject, cluster)
        context = (
            [x for x in subjects.split(",") if x] or s.subject_ids()
        )
        if subject not in context:
            context = context + [subject]
        axis_list = [a for a in axes.split(",") if a]
        try:
            fps, ranges = s.fingerprints(
                context, axis_list or s.available_axes(context)
            )
        except (UnknownSubject, UnknownAxis) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        match = next(fp for fp in fps if fp.key == key)
        return _json_response(match.as_dict())

    @app.get("/api/clusters/{subject}/{cluster}/geometry")
    def geometry(
        subject: str,
        cluster: int,
        scalar: str = Query(default=""),
        colormap: str = Query(default=""),
        framing: str = Query(default="json"),
    ) -> Response:
        s = require_store()
        key = require_key(s, subject, cluster)
        g = s.load(key)

        if framing == "binary":
            # compact framing: fiber count, then per fiber a point count
            # and its float32 xyz triples, all little-endian
            parts = [struct.pack("<I", g.n_fibers)]
            for f in g.fibers:
                parts.append(struct.pack("<I", f.n_points))
                parts.append(np.asarray(f.points, dtype="<f4").tobytes())
            return Response(
                content=b"".join(parts), media_type="application/octet-stream"
            )
        if framing != "json":
            raise HTTPException(status_code=400, detail=f"unknown framing {framing!r}")

        payload: dict = {
            "subject_id": subject,
            "cluster_id": cluster,
            "fibers": [
                [float(v) for v in f.points.reshape(-1)] for f in g.fibers
            ],
        }
        if scalar or colormap:
            if not (scalar and colormap):
                raise HTTPException(
                    status_code=400, detail="need both scalar and colormap"
                )
            try:
                cmap = colormaps.get(colormap)
            except KeyError:
                raise HTTPException(
                    status_code=400, detail=f"unknown colormap {colormap!r}"
                )
            if scalar not in g.scalar_names:
                raise HTTPException(
                    status_code=400, detail=f"unknown scalar {scalar!r}"
                )
            # color against the raw range over the whole cohort so panels
            # for different subjects share one scale
            for sid in s.subject_ids():
                for k2 in s.keys_of([sid]):
                    s.load(k2)
            lo, hi = s.cohort().scalar_ranges[scalar]
            colors = []
            for f in g.fibers:
                values = f.per_vertex_scalars[scalar]
                rgb = [
                    colormaps.map_color(minmax_normalize(v, (lo, hi)), cmap)
                    for v in values
                ]
                colors.append([c for triple in rgb for c in triple])
            payload["colors"] = colors
            payload["scalar"] = scalar
            payload["colormap"] = colormap
        return _json_response(payload)

    @app.get("/api/colormaps")
    def colormap_registry() -> Response:
        return _json_response(
            [
                {
                    "name": cmap.name,
                    "control_points": [
                        [t, list(rgb)] for t, rgb in cmap.control_points
                    ],
                }
                for cmap in (colormaps.get(n) for n in colormaps.names())
            ]
        )

    return app
