"""Subject metadata CSV loading.

RFC-4180-style CSV, UTF-8, first row is the header. One column must identify
the subject; every other cell is kept verbatim as a string (ages, weights
etc. are not coerced).
"""
from __future__ import annotations

import csv
import io

from ..errors import DuplicateSubjectId, MissingIdColumn
from ..model import SubjectRecord

ID_COLUMN_NAMES = ("subject_id", "subjectid", "subject id", "subject", "id")


def load_metadata_csv(data: bytes) -> list[SubjectRecord]:
    """Parse metadata CSV bytes into subject stubs (empty cluster index)."""
    try:
        text = data.decode("utf-8-sig")
        rows = list(csv.reader(io.StringIO(text)))
    except (UnicodeDecodeError, csv.Error) as exc:
        raise MissingIdColumn(f"not readable as CSV, no header row: {exc}") from exc
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise MissingIdColumn("empty file, no header row")
    header = [h.strip() for h in rows[0]]
    lowered = [h.lower() for h in header]
    id_col = next((i for i, h in enumerate(lowered) if h in ID_COLUMN_NAMES), None)
    if id_col is None:
        raise MissingIdColumn(f"no subject-id column among {header}")

    records: list[SubjectRecord] = []
    seen: set[str] = set()
    for row in rows[1:]:
        padded = list(row) + [""] * (len(header) - len(row))
        subject_id = padded[id_col].strip()
        if subject_id in seen:
            raise DuplicateSubjectId(subject_id)
        seen.add(subject_id)
        metadata = {
            header[i]: padded[i] for i in range(len(header)) if i != id_col
        }
        records.append(SubjectRecord(subject_id=subject_id, metadata=metadata))
    return records
