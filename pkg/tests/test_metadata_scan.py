from __future__ import annotations

import numpy as np
import pytest

from fiberscope.errors import DuplicateSubjectId, MissingIdColumn, NoMatches
from fiberscope.io.metadata import load_metadata_csv
from fiberscope.io.scan import scan_cohort
from fiberscope.io.trk import write_trk
from fiberscope.synthetic import STUDY_CLUSTER_IDS, make_cluster


def test_basic_csv():
    records = load_metadata_csv(b"id,age,gender\nS1,23,F\n")
    assert len(records) == 1
    assert records[0].subject_id == "S1"
    assert records[0].metadata == {"age": "23", "gender": "F"}


def test_all_cells_kept_as_strings():
    records = load_metadata_csv(b"subject_id,age,weight\nS1,023,70.5\n")
    assert records[0].metadata == {"age": "023", "weight": "70.5"}


def test_duplicate_subject_id():
    with pytest.raises(DuplicateSubjectId):
        load_metadata_csv(b"id,age\nS1,23\nS1,24\n")


def test_missing_id_column():
    with pytest.raises(MissingIdColumn):
        load_metadata_csv(b"age,gender\n23,F\n")


def test_empty_data_section():
    assert load_metadata_csv(b"id,age,gender\n") == []


def test_short_rows_padded():
    records = load_metadata_csv(b"id,age,gender\nS1,23\n")
    assert records[0].metadata == {"age": "23", "gender": ""}


def _touch_cluster(path, cluster_id=0):
    g = make_cluster(np.random.default_rng(cluster_id), cluster_id, n_fibers=2)
    path.write_bytes(write_trk(g))


def test_scan_finds_and_orders(tmp_path):
    for sid in ("S2", "S1"):
        (tmp_path / sid).mkdir()
    _touch_cluster(tmp_path / "S1" / "cluster_00050.trk", 50)
    _touch_cluster(tmp_path / "S1" / "cluster_00000.trk", 0)
    _touch_cluster(tmp_path / "S2" / "cluster_00007.trk", 7)
    manifest = scan_cohort(tmp_path)
    assert [(e.subject_id, e.cluster_id) for e in manifest.entries] == [
        ("S1", 0),
        ("S1", 50),
        ("S2", 7),
    ]
    assert all(e.format == "trk" for e in manifest.entries)


def test_scan_empty_dir_raises(tmp_path):
    with pytest.raises(NoMatches):
        scan_cohort(tmp_path)


def test_scan_ignores_non_matching_files(tmp_path):
    (tmp_path / "S1").mkdir()
    (tmp_path / "S1" / "notes.txt").write_text("hello")
    (tmp_path / "metadata.csv").write_text("id\nS1\n")
    with pytest.raises(NoMatches):
        scan_cohort(tmp_path)


def test_study_sampling_yields_16_clusters_per_subject(study_cohort_dir):
    manifest = scan_cohort(study_cohort_dir)
    assert len(STUDY_CLUSTER_IDS) == 16
    for sid in manifest.subject_ids():
        ids = [e.cluster_id for e in manifest.clusters_of(sid)]
        assert ids == sorted(STUDY_CLUSTER_IDS)
    assert len(manifest.subject_ids()) == 5


def test_custom_pattern(tmp_path):
    (tmp_path / "caseA").mkdir()
    _touch_cluster(tmp_path / "caseA" / "bundle-3.trk", 3)
    manifest = scan_cohort(tmp_path, pattern=r"^case(?P<subject>\w+)/bundle-(?P<cluster>\d+)\.(?P<ext>trk)$")
    assert manifest.entries[0].subject_id == "A"
    assert manifest.entries[0].cluster_id == 3


def test_csv_loader_total_on_garbage():
    from hypothesis import given
    from hypothesis import strategies as st

    @given(st.binary(max_size=300))
    def run(data):
        try:
            load_metadata_csv(data)
        except (MissingIdColumn, DuplicateSubjectId):
            pass

    run()
