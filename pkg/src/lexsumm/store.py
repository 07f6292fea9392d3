"""Persistent case database: one JSON file per judgment plus a metadata index.

The case id is the SHA-256 of the normalized text, so ingesting the same
judgment twice is idempotent. Writes go through temp-file-then-rename so a
reader never sees a half-written document or index, and a fresh store over
the same directory sees every completed ingest.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import threading
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path

from .errors import NotFoundError, StorageError, ValidationError
from .text import normalize_text

_INDEX_VERSION = 1
_CASE_ID = re.compile(r"^[0-9a-f]{64}$")


@dataclass(frozen=True)
class CaseMetadata:
    title: str
    court: str
    jurisdiction: str
    subject_matter: str
    decision_date: date

    def __post_init__(self) -> None:
        if not self.title.strip():
            raise ValidationError("metadata title must be non-empty")

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "court": self.court,
            "jurisdiction": self.jurisdiction,
            "subject_matter": self.subject_matter,
            "decision_date": self.decision_date.isoformat(),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "CaseMetadata":
        try:
            decision_date = date.fromisoformat(str(raw["decision_date"]))
        except KeyError:
            raise ValidationError("metadata decision_date is required") from None
        except ValueError as exc:
            raise ValidationError(f"bad decision_date: {exc}") from None
        try:
            return cls(
                title=str(raw["title"]),
                court=str(raw.get("court", "")),
                jurisdiction=str(raw.get("jurisdiction", "")),
                subject_matter=str(raw.get("subject_matter", "")),
                decision_date=decision_date,
            )
        except KeyError as exc:
            raise ValidationError(f"metadata field {exc.args[0]!r} is required") from None


@dataclass(frozen=True)
class CaseDocument:
    id: str
    metadata: CaseMetadata
    raw_text: str
    ingested_at: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "metadata": self.metadata.to_dict(),
            "raw_text": self.raw_text,
            "ingested_at": self.ingested_at,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "CaseDocument":
        return cls(
            id=str(raw["id"]),
            metadata=CaseMetadata.from_dict(raw["metadata"]),
            raw_text=str(raw["raw_text"]),
            ingested_at=str(raw["ingested_at"]),
        )


@dataclass(frozen=True)
class QueryFilter:
    """Conjunctive metadata filters plus pagination."""

    subject_matter: str | None = None
    jurisdiction: str | None = None
    date_from: date | None = None
    date_to: date | None = None
    page: int = 1
    page_size: int = 20

    def __post_init__(self) -> None:
        if self.page < 1:
            raise ValidationError("page must be >= 1")
        if self.page_size < 1:
            raise ValidationError("page_size must be >= 1")
        if (
            self.date_from is not None
            and self.date_to is not None
            and self.date_from > self.date_to
        ):
            raise ValidationError("date_from must not be after date_to")

    def matches(self, meta: CaseMetadata) -> bool:
        if (
            self.subject_matter is not None
            and meta.subject_matter.casefold() != self.subject_matter.casefold()
        ):
            return False
        if (
            self.jurisdiction is not None
            and meta.jurisdiction.casefold() != self.jurisdiction.casefold()
        ):
            return False
        if self.date_from is not None and meta.decision_date < self.date_from:
            return False
        if self.date_to is not None and meta.decision_date > self.date_to:
            return False
        return True


@dataclass(frozen=True)
class QueryPage:
    items: list[tuple[str, CaseMetadata]]
    total: int
    page: int


def content_id(raw_text: str) -> str:
    """Stable case id: SHA-256 hex of the normalized text."""
    normalized = normalize_text(raw_text).text
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()


class CaseStore:
    """Directory-backed store; concurrent readers, serialized writers."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create store directory {self.root}: {exc}") from exc
        self._lock = threading.Lock()

    # -- writes ------------------------------------------------------------

    def ingest(self, raw_text: str, metadata: CaseMetadata) -> str:
        """Persist a judgment; same text means same id and no new entry."""
        if not normalize_text(raw_text).text.strip():
            raise ValidationError("case text is empty after normalization")
        case_id = content_id(raw_text)
        document = CaseDocument(
            id=case_id,
            metadata=metadata,
            raw_text=raw_text,
            ingested_at=datetime.now(timezone.utc).isoformat(),
        )
        with self._lock:
            self._write_json(self.case_path(case_id), document.to_dict())
            index = self._read_index()
            index[case_id] = metadata.to_dict()
            self._write_json(
                self._index_path(), {"version": _INDEX_VERSION, "entries": index}
            )
        return case_id

    # -- reads -------------------------------------------------------------

    def get(self, case_id: str) -> CaseDocument:
        if not _CASE_ID.match(case_id):
            raise NotFoundError(f"no case with id {case_id!r}")
        path = self.case_path(case_id)
        if not path.exists():
            raise NotFoundError(f"no case with id {case_id!r}")
        try:
            return CaseDocument.from_dict(json.loads(path.read_text(encoding="utf-8")))
        except (json.JSONDecodeError, KeyError, ValidationError) as exc:
            raise StorageError(f"corrupt case file {path}: {exc}") from exc

    def query(self, flt: QueryFilter) -> QueryPage:
        """Filtered ids and metadata, newest decision first, paginated."""
        entries = []
        for case_id, raw_meta in self._read_index().items():
            meta = CaseMetadata.from_dict(raw_meta)
            if flt.matches(meta):
                entries.append((case_id, meta))
        entries.sort(key=lambda item: (-item[1].decision_date.toordinal(), item[0]))
        start = (flt.page - 1) * flt.page_size
        return QueryPage(
            items=entries[start : start + flt.page_size],
            total=len(entries),
            page=flt.page,
        )

    def count(self) -> int:
        return len(self._read_index())

    def ids(self) -> list[str]:
        return sorted(self._read_index())

    def case_path(self, case_id: str) -> Path:
        return self.root / f"{case_id}.json"

    def gold_path(self, case_id: str) -> Path:
        return self.root / f"{case_id}.gold.txt"

    # -- internals ---------------------------------------------------------

    def _index_path(self) -> Path:
        return self.root / "index.json"

    def _read_index(self) -> dict[str, dict]:
        path = self._index_path()
        if not path.exists():
            return {}
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            return dict(raw["entries"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise StorageError(f"corrupt index file {path}: {exc}") from exc

    def _write_json(self, path: Path, payload: dict) -> None:
        # Write-to-temp-then-rename keeps readers off partial files.
        try:
            fd, tmp_name = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(payload, handle, ensure_ascii=False, indent=2)
            os.replace(tmp_name, path)
        except OSError as exc:
            raise StorageError(f"cannot write {path}: {exc}") from exc
