"""Cohort directory scanning.

Default layout: <root>/<subject_id>/<anything><cluster digits>.<trk|vtp>.
The pattern is a regex over the POSIX-style path relative to the root with
named groups `subject`, `cluster`, and `ext`; override it for cohorts that
are organized differently.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import NoMatches

DEFAULT_PATTERN = r"^(?P<subject>[^/]+)/[^/]*?(?P<cluster>\d+)\.(?P<ext>trk|vtp)$"


@dataclass(frozen=True)
class ManifestEntry:
    subject_id: str
    cluster_id: int
    path: Path
    format: str  # "trk" or "vtp"


@dataclass
class CohortManifest:
    root: Path
    pattern: str
    entries: list[ManifestEntry] = field(default_factory=list)

    def subject_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.entries:
            seen.setdefault(e.subject_id, None)
        return list(seen)

    def clusters_of(self, subject_id: str) -> list[ManifestEntry]:
        return [e for e in self.entries if e.subject_id == subject_id]

    def lookup(self, subject_id: str, cluster_id: int) -> ManifestEntry | None:
        for e in self.entries:
            if e.subject_id == subject_id and e.cluster_id == cluster_id:
                return e
        return None


def scan_cohort(root: Path | str, pattern: str = DEFAULT_PATTERN) -> CohortManifest:
    """Discover cluster files under root.

    Entries come back in deterministic order: subject id lexicographic,
    then cluster id ascending. When the same (subject, cluster) pair matches
    several files, the lexicographically first path wins.
    """
    root = Path(root)
    regex = re.compile(pattern, re.IGNORECASE)
    found: dict[tuple[str, int], ManifestEntry] = {}
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        rel = path.relative_to(root).as_posix()
        m = regex.search(rel)
        if m is None:
            continue
        key = (m.group("subject"), int(m.group("cluster")))
        if key in found:
            continue
        found[key] = ManifestEntry(
            subject_id=key[0],
            cluster_id=key[1],
            path=path,
            format=m.group("ext").lower(),
        )
    if not found:
        raise NoMatches(f"no cluster files matching {pattern!r} under {root}")
    entries = sorted(found.values(), key=lambda e: (e.subject_id, e.cluster_id))
    return CohortManifest(root=root, pattern=pattern, entries=entries)
