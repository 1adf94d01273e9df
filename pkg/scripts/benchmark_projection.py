#!/usr/bin/env python3
"""Time the pivot layout at full collection scale (67 subjects x 800 clusters).

Prints wall time and peak RSS; the acceptance budget is 10 s / 2 GB for
53,600 fingerprints at k=100.
"""
from __future__ import annotations

import argparse
import resource
import time

import numpy as np

from fiberscope.model import ClusterKey
from fiberscope.projection import DistanceMetric, pivot_mds
from fiberscope.stats import Fingerprint


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--subjects", type=int, default=67)
    parser.add_argument("--clusters", type=int, default=800)
    parser.add_argument("--axes", type=int, default=6)
    parser.add_argument("--k", type=int, default=100)
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    axes = tuple(f"ax{i}" for i in range(args.axes))
    fps = []
    for si in range(args.subjects):
        values = rng.uniform(0.0, 1.0, size=(args.clusters, args.axes))
        fps.extend(
            Fingerprint(ClusterKey(f"sub-{si:03d}", ci), axes, tuple(values[ci]))
            for ci in range(args.clusters)
        )
    metric = DistanceMetric(axes=axes)

    start = time.perf_counter()
    layout = pivot_mds(fps, metric, k=args.k, d=2, seed=args.seed)
    elapsed = time.perf_counter() - start
    peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(
        f"n={len(fps)} k={args.k}: {elapsed:.2f} s, peak RSS {peak_mb:.0f} MB, "
        f"extent x [{layout.coords[:, 0].min():.3f}, {layout.coords[:, 0].max():.3f}]"
    )


if __name__ == "__main__":
    main()
