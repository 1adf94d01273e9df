"""File format readers and cohort discovery."""
from .metadata import load_metadata_csv
from .scan import DEFAULT_PATTERN, CohortManifest, ManifestEntry, scan_cohort
from .trk import TrkHeader, parse_trk, parse_trk_header, write_trk
from .vtp import parse_vtp

__all__ = [
    "DEFAULT_PATTERN",
    "CohortManifest",
    "ManifestEntry",
    "TrkHeader",
    "load_metadata_csv",
    "parse_trk",
    "parse_trk_header",
    "parse_vtp",
    "scan_cohort",
    "write_trk",
]
