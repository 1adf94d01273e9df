from __future__ import annotations

import numpy as np
import pytest

from fiberscope.errors import UnknownAxis, UnknownSubject
from fiberscope.io.trk import write_trk
from fiberscope.model import ClusterGeometry, ClusterKey, FiberPolyline
from fiberscope.store import CohortStore, stable_dumps
from fiberscope.synthetic import SCALAR_FIELDS


def test_scan_and_metadata(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    assert len(store.subject_ids()) == 5
    subjects = store.subjects()
    assert all(len(s.cluster_index) == 16 for s in subjects)
    assert set(subjects[0].metadata) == {"age", "gender", "weight", "height"}


def test_lazy_loading_counts(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    assert store.loaded_count() == 0
    store.projection(["sub-01"], ["fa1"], k=4, seed=0)
    assert store.loaded_count() == 16  # only the requested subject


def test_fingerprints_cover_requested_subjects(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    fps, ranges = store.fingerprints(["sub-01", "sub-03"], ["fa1", "fa2"])
    assert len(fps) == 32
    assert set(ranges) >= {"fa1", "fa2"}
    assert all(0.0 <= v <= 1.0 for fp in fps for v in fp.values)


def test_unknown_subject_and_axis(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    with pytest.raises(UnknownSubject):
        store.fingerprints(["nope"], ["fa1"])
    with pytest.raises(UnknownAxis):
        store.fingerprints(["sub-01"], ["zzz"])


def test_available_axes(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    axes = store.available_axes(["sub-01"])
    assert set(axes) == set(SCALAR_FIELDS) | {"fiber_similarity"}


def test_projection_cache_is_request_order_insensitive(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    k1, _, b1 = store.projection(["sub-01", "sub-02"], ["fa1", "fa2"], 8, 3)
    k2, _, b2 = store.projection(["sub-02", "sub-01"], ["fa2", "fa1"], 8, 3)
    assert k1 == k2
    assert b1 == b2
    assert store.layout_by_key(k1) is not None
    assert store.layout_by_key("deadbeef") is None


def test_cohort_snapshot_tracks_loaded_ranges(study_cohort_dir):
    store = CohortStore.from_root(study_cohort_dir)
    assert store.cohort().scalar_ranges == {}
    store.summary(ClusterKey("sub-01", 0))
    ranges = store.cohort().scalar_ranges
    assert set(ranges) == set(SCALAR_FIELDS) | {"fiber_similarity"}
    assert all(lo <= hi for lo, hi in ranges.values())


def test_nan_field_warning_recorded(tmp_path):
    f = FiberPolyline(
        points=np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
        per_vertex_scalars={"bad": np.array([np.nan, np.nan])},
    )
    g = ClusterGeometry(cluster_id=0, fibers=[f], scalar_names=["bad"])
    (tmp_path / "S1").mkdir()
    (tmp_path / "S1" / "cluster_0.trk").write_bytes(write_trk(g))
    store = CohortStore.from_root(tmp_path)
    with pytest.warns(Warning):
        store.summary(ClusterKey("S1", 0))
    messages = store.pop_warnings()
    assert any("only NaN samples" in m for m in messages)
    assert store.pop_warnings() == []


def test_cohort_scope_ranges(study_cohort_dir):
    selection = CohortStore.from_root(study_cohort_dir, ranges_scope="selection")
    cohort = CohortStore.from_root(study_cohort_dir, ranges_scope="cohort")
    _, r_sel = selection.fingerprints(["sub-01"], ["fa1"])
    _, r_all = cohort.fingerprints(["sub-01"], ["fa1"])
    lo_s, hi_s = r_sel["fa1"]
    lo_a, hi_a = r_all["fa1"]
    assert lo_a <= lo_s and hi_a >= hi_s  # cohort scope can only widen


def test_stable_dumps_is_canonical():
    a = stable_dumps({"b": 1.5, "a": [0.1, 2]})
    b = stable_dumps({"a": [0.1, 2], "b": 1.5})
    assert a == b == '{"a":[0.1,2],"b":1.5}'
