"""Batch entry points: scan, summarize, project, serve.

Exit codes: 0 ok, 1 data error (typed failure while reading or computing),
2 usage error. JSON outputs are written with sorted keys and canonical float
formatting so repeated runs produce byte-identical files.
"""
from __future__ import annotations

import socket
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from .errors import BadK, FiberscopeError, NoMatches, PortInUse
from .io.scan import DEFAULT_PATTERN, scan_cohort
from .io.trk import parse_trk_header
from .io.vtp import parse_vtp
from .model import ClusterKey
from .store import CohortStore, stable_dumps

ROOT_ENV = "FIBERSCOPE_ROOT"
PORT_ENV = "FIBERSCOPE_PORT"


@click.group()
def main() -> None:
    """Explore cohorts of fiber-cluster files."""


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _write_out(out: str, text: str) -> None:
    if out == "-":
        click.echo(text)
    else:
        Path(out).write_text(text + "\n")


@main.command()
@click.argument("root", envvar=ROOT_ENV, type=click.Path(exists=True, file_okay=False))
@click.option("--pattern", default=DEFAULT_PATTERN, show_default=False,
              help="Regex over paths relative to ROOT with subject/cluster/ext groups.")
def scan(root: str, pattern: str) -> None:
    """Discover cluster files and check that each one parses."""
    try:
        manifest = scan_cohort(root, pattern)
    except NoMatches as exc:
        _fail(str(exc))
    failures = []
    for entry in manifest.entries:
        try:
            data = entry.path.read_bytes()
            if entry.format == "trk":
                parse_trk_header(data)
            else:
                parse_vtp(data, cluster_id=entry.cluster_id)
        except FiberscopeError as exc:
            failures.append(f"{entry.path}: {type(exc).__name__}: {exc}")
    subjects = manifest.subject_ids()
    click.echo(f"{len(subjects)} subjects, {len(manifest.entries)} clusters")
    for sid in subjects:
        entries = manifest.clusters_of(sid)
        formats = sorted({e.format for e in entries})
        click.echo(f"  {sid}: {len(entries)} clusters ({', '.join(formats)})")
    if failures:
        click.echo(f"{len(failures)} file(s) failed to parse:", err=True)
        for line in failures:
            click.echo(f"  {line}", err=True)
        sys.exit(1)


@main.command()
@click.argument("root", envvar=ROOT_ENV, type=click.Path(exists=True, file_okay=False))
@click.option("--out", default="-", help="Output path, or - for stdout.")
@click.option("--jobs", default=4, show_default=True, help="Parallel parse workers.")
def summarize(root: str, out: str, jobs: int) -> None:
    """Write per-cluster statistics for the whole cohort as a JSON array."""
    try:
        store = CohortStore.from_root(root)
    except NoMatches as exc:
        _fail(str(exc))
    keys = [
        ClusterKey(e.subject_id, e.cluster_id) for e in store.manifest.entries
    ]
    failures = []

    def one(key: ClusterKey):
        try:
            return key, store.summary(key)
        except FiberscopeError as exc:
            return key, exc

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = dict(pool.map(one, keys))
    records = []
    for key in keys:  # manifest order keeps output deterministic
        result = results[key]
        if isinstance(result, Exception):
            failures.append(f"{key}: {type(result).__name__}: {result}")
            continue
        records.append(result.as_dict())
    for message in store.pop_warnings():
        click.echo(f"warning: {message}", err=True)
    _write_out(out, stable_dumps(records))
    if failures:
        for line in failures:
            click.echo(f"error: {line}", err=True)
        sys.exit(1)


@main.command()
@click.argument("root", envvar=ROOT_ENV, type=click.Path(exists=True, file_okay=False))
@click.option("--subjects", default="", help="Comma-separated subject ids (default: all).")
@click.option("--axes", default="", help="Comma-separated axis names (default: all fields).")
@click.option("--k", default=None, type=int, help="Pivot count (default: min(50, n)).")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", default="-", help="Output path, or - for stdout.")
@click.option("--ranges", "ranges_scope", default="selection",
              type=click.Choice(["selection", "cohort"]), show_default=True,
              help="Normalize fingerprints against the selected subjects or the whole cohort.")
def project(root: str, subjects: str, axes: str, k: int | None, seed: int,
            out: str, ranges_scope: str) -> None:
    """Project the cohort's clusters to 2D and write the layout as JSON."""
    try:
        store = CohortStore.from_root(root, ranges_scope=ranges_scope)
    except NoMatches as exc:
        _fail(str(exc))
    subject_ids = [s for s in subjects.split(",") if s] or store.subject_ids()
    axis_list = [a for a in axes.split(",") if a] or None
    n = len(store.keys_of(subject_ids)) if subject_ids else 0
    if k is not None and k > n:
        click.echo(f"notice: k={k} exceeds {n} clusters, clamping to {n}", err=True)
        k = n
    try:
        _, layout, _ = store.projection(subject_ids, axis_list, k, seed)
    except FiberscopeError as exc:
        _fail(f"{type(exc).__name__}: {exc}")
    _write_out(out, stable_dumps(layout.to_records()))


@main.command()
@click.argument("root", envvar=ROOT_ENV, type=click.Path(exists=True, file_okay=False))
@click.option("--port", envvar=PORT_ENV, default=8080, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--timeout", default=60.0, show_default=True,
              help="Projection request timeout in seconds (exceeded -> 504).")
def serve(root: str, port: int, host: str, timeout: float) -> None:
    """Serve the exploration API for a cohort directory."""
    import uvicorn

    from .server import create_app

    try:
        store = CohortStore.from_root(root)
    except NoMatches as exc:
        _fail(str(exc))
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
        probe.close()
    except OSError as exc:
        _fail(f"{PortInUse.__name__}: {host}:{port} ({exc})")
    app = create_app(store, request_timeout=timeout)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
