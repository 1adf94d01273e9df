from __future__ import annotations

import numpy as np
import pytest

from fiberscope.model import ClusterGeometry, FiberPolyline
from fiberscope.synthetic import write_fixture_cohort


@pytest.fixture(scope="session")
def study_cohort_dir(tmp_path_factory):
    """Study-style fixture: 5 subjects, every 50th of 800 cluster ids."""
    root = tmp_path_factory.mktemp("cohort")
    return write_fixture_cohort(root, seed=7)


@pytest.fixture
def two_fiber_cluster() -> ClusterGeometry:
    f1 = FiberPolyline(
        points=np.array([[0.0, 0.0, 0.0], [3.0, 4.0, 0.0]]),
        per_vertex_scalars={"fa": np.array([1.0, 3.0])},
    )
    f2 = FiberPolyline(
        points=np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]]),
        per_vertex_scalars={"fa": np.array([5.0, 5.0, 5.0])},
    )
    return ClusterGeometry(
        cluster_id=1,
        fibers=[f1, f2],
        per_fiber_properties={"similarity": np.array([2.0, 4.0])},
        scalar_names=["fa"],
        property_names=["similarity"],
    )
