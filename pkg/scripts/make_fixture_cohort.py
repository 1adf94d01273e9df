#!/usr/bin/env python3
"""Generate a study-style synthetic cohort on disk.

Defaults reproduce the evaluation shape: 5 subjects, every 50th cluster id
of 800 (16 clusters each), mixed TRK/VTP files, and a metadata CSV.
"""
from __future__ import annotations

import argparse

from fiberscope.synthetic import STUDY_CLUSTER_IDS, write_fixture_cohort


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("root", help="output directory (created if missing)")
    parser.add_argument("--subjects", type=int, default=5)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--fibers", type=int, default=8, help="fibers per cluster")
    parser.add_argument(
        "--all-clusters",
        action="store_true",
        help="write all 800 cluster ids instead of every 50th",
    )
    args = parser.parse_args()
    cluster_ids = tuple(range(800)) if args.all_clusters else STUDY_CLUSTER_IDS
    root = write_fixture_cohort(
        args.root,
        n_subjects=args.subjects,
        cluster_ids=cluster_ids,
        seed=args.seed,
        n_fibers=args.fibers,
    )
    print(f"wrote {args.subjects} subjects x {len(cluster_ids)} clusters to {root}")


if __name__ == "__main__":
    main()
