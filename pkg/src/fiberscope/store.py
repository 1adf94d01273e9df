"""Cohort session state: lazy cluster loading and derived-result caches.

One CohortStore wraps a scanned manifest. Cluster files are parsed on first
touch and cached; summaries, fingerprint ranges, and projection layouts are
derived on demand. Everything is guarded by one lock so the store can sit
behind a multi-threaded HTTP server; loaded objects are immutable and safe
to hand out.

Fingerprint normalization ranges span the clusters of the subjects involved
in the request by default ("selection" scope); switch to "cohort" scope to
normalize against every cluster in the collection (forces a full load).
"""
from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path

import numpy as np

from .errors import UnknownAxis, UnknownSubject
from .io.metadata import load_metadata_csv
from .io.scan import DEFAULT_PATTERN, CohortManifest, scan_cohort
from .io.trk import parse_trk
from .io.vtp import parse_vtp
from .model import (
    ClusterGeometry,
    ClusterKey,
    Cohort,
    SubjectRecord,
    resolve_name_collisions,
)
from .projection import DistanceMetric, ProjectionLayout, pivot_mds
from .stats import ClusterSummary, Fingerprint, cluster_summary, cohort_ranges, fingerprint

METADATA_FILENAME = "metadata.csv"

_PARSERS = {"trk": parse_trk, "vtp": parse_vtp}


def stable_dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace drift.

    Floats go through repr (shortest exact round-trip), so identical inputs
    serialize to identical bytes across runs and platforms.
    """
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class CohortStore:
    def __init__(
        self,
        manifest: CohortManifest,
        metadata: dict[str, dict[str, str]] | None = None,
        ranges_scope: str = "selection",
    ):
        if ranges_scope not in ("selection", "cohort"):
            raise ValueError(f"ranges_scope {ranges_scope!r}")
        self.manifest = manifest
        self.ranges_scope = ranges_scope
        self._metadata = metadata or {}
        self._lock = threading.RLock()
        self._geometry: dict[ClusterKey, ClusterGeometry] = {}
        self._summaries: dict[ClusterKey, ClusterSummary] = {}
        self._raw_ranges: dict[str, tuple[float, float]] = {}
        self._layouts: dict[str, tuple[ProjectionLayout, bytes]] = {}
        self._warnings: list[str] = []

    @classmethod
    def from_root(
        cls,
        root: Path | str,
        pattern: str = DEFAULT_PATTERN,
        ranges_scope: str = "selection",
    ) -> "CohortStore":
        """Scan a cohort directory; picks up <root>/metadata.csv when present."""
        root = Path(root)
        manifest = scan_cohort(root, pattern)
        metadata: dict[str, dict[str, str]] = {}
        csv_path = root / METADATA_FILENAME
        if csv_path.is_file():
            for record in load_metadata_csv(csv_path.read_bytes()):
                metadata[record.subject_id] = record.metadata
        return cls(manifest, metadata=metadata, ranges_scope=ranges_scope)

    # --- index ---------------------------------------------------------------

    def subject_ids(self) -> list[str]:
        return self.manifest.subject_ids()

    def subjects(self) -> list[SubjectRecord]:
        records = []
        for sid in self.subject_ids():
            entries = self.manifest.clusters_of(sid)
            records.append(
                SubjectRecord(
                    subject_id=sid,
                    metadata=dict(self._metadata.get(sid, {})),
                    cluster_index={e.cluster_id: e.path for e in entries},
                )
            )
        return records

    def keys_of(self, subject_ids: list[str]) -> list[ClusterKey]:
        known = set(self.subject_ids())
        keys = []
        for sid in subject_ids:
            if sid not in known:
                raise UnknownSubject(sid)
            keys.extend(
                ClusterKey(sid, e.cluster_id) for e in self.manifest.clusters_of(sid)
            )
        return keys

    def cohort(self) -> Cohort:
        """Snapshot of the cohort with raw ranges of clusters loaded so far."""
        with self._lock:
            return Cohort(subjects=self.subjects(), scalar_ranges=dict(self._raw_ranges))

    def loaded_count(self) -> int:
        with self._lock:
            return len(self._geometry)

    def pop_warnings(self) -> list[str]:
        with self._lock:
            out, self._warnings = self._warnings, []
            return out

    # --- loading -------------------------------------------------------------

    def load(self, key: ClusterKey) -> ClusterGeometry:
        """Parse the cluster file for key (cached after the first call)."""
        with self._lock:
            cached = self._geometry.get(key)
        if cached is not None:
            return cached
        entry = self.manifest.lookup(key.subject_id, key.cluster_id)
        if entry is None:
            raise KeyError(f"no cluster {key} in the manifest")
        g = _PARSERS[entry.format](entry.path.read_bytes(), cluster_id=key.cluster_id)
        g = resolve_name_collisions(g)
        with self._lock:
            self._geometry.setdefault(key, g)
            self._update_raw_ranges(g)
            return self._geometry[key]

    def _update_raw_ranges(self, g: ClusterGeometry) -> None:
        def update(name: str, values: np.ndarray) -> None:
            finite = values[~np.isnan(values)]
            if finite.size == 0:
                return
            lo, hi = self._raw_ranges.get(name, (np.inf, -np.inf))
            self._raw_ranges[name] = (
                min(lo, float(finite.min())),
                max(hi, float(finite.max())),
            )

        for name in g.scalar_names:
            for f in g.fibers:
                update(name, f.per_vertex_scalars[name])
        for name in g.property_names:
            update(name, np.asarray(g.per_fiber_properties[name]))

    def summary(self, key: ClusterKey) -> ClusterSummary:
        with self._lock:
            cached = self._summaries.get(key)
        if cached is not None:
            return cached
        g = self.load(key)
        s = cluster_summary(g, key)
        # catch_warnings is process-global, so find dropped fields by
        # comparing against the geometry instead (summaries run in parallel)
        dropped = [n for n in g.scalar_names if n not in s.per_scalar]
        dropped += [n for n in g.property_names if n not in s.per_property]
        with self._lock:
            self._summaries.setdefault(key, s)
            self._warnings.extend(
                f"cluster {key}: field '{name}' has only NaN samples, dropped"
                for name in dropped
            )
            return self._summaries[key]

    # --- derived -------------------------------------------------------------

    def available_axes(self, subject_ids: list[str] | None = None) -> list[str]:
        """All field names seen across the given subjects (default: all)."""
        keys = self.keys_of(subject_ids or self.subject_ids())
        names: set[str] = set()
        for key in keys:
            g = self.load(key)
            names.update(g.scalar_names)
            names.update(g.property_names)
        return sorted(names)

    def fingerprints(
        self, subject_ids: list[str], axes: list[str]
    ) -> tuple[list[Fingerprint], dict[str, tuple[float, float]]]:
        """Fingerprints for every cluster of the given subjects.

        Ranges come from the selection or the whole cohort depending on
        the store's ranges_scope.
        """
        keys = self.keys_of(subject_ids)
        if self.ranges_scope == "cohort":
            range_keys = self.keys_of(self.subject_ids())
        else:
            range_keys = keys
        range_summaries = [self.summary(k) for k in range_keys]
        ranges = cohort_ranges(range_summaries)
        unknown = [a for a in axes if a not in ranges]
        if unknown:
            raise UnknownAxis(f"axes {unknown} not among known fields")
        fps = [fingerprint(self.summary(k), ranges, axes) for k in keys]
        return fps, ranges

    @staticmethod
    def layout_request_key(
        subject_ids: list[str], axes: list[str], k: int | None, seed: int
    ) -> str:
        canonical = stable_dumps(
            {
                "subjects": sorted(set(subject_ids)),
                "axes": sorted(set(axes)),
                "k": k,
                "seed": seed,
            }
        )
        return hashlib.sha1(canonical.encode()).hexdigest()[:16]

    def projection(
        self,
        subject_ids: list[str],
        axes: list[str] | None = None,
        k: int | None = None,
        seed: int = 0,
    ) -> tuple[str, ProjectionLayout, bytes]:
        """Layout for the requested subjects; cached per request key.

        Returns (layout_key, layout, canonical JSON body). Repeated identical
        requests return the same body bytes.
        """
        if axes is None or not axes:
            axes = self.available_axes(subject_ids)
        request_key = self.layout_request_key(subject_ids, axes, k, seed)
        with self._lock:
            if request_key in self._layouts:
                layout, body = self._layouts[request_key]
                return request_key, layout, body
        fps, _ = self.fingerprints(subject_ids, axes)
        metric = DistanceMetric(axes=tuple(sorted(set(axes))))
        layout = pivot_mds(fps, metric, k=k, seed=seed)
        body = stable_dumps(
            {
                "layout_key": request_key,
                "metric_axes": list(metric.axes),
                "points": layout.to_records(),
            }
        ).encode()
        with self._lock:
            self._layouts.setdefault(request_key, (layout, body))
            layout, body = self._layouts[request_key]
        return request_key, layout, body

    def layout_by_key(self, layout_key: str) -> ProjectionLayout | None:
        with self._lock:
            entry = self._layouts.get(layout_key)
        return entry[0] if entry else None
