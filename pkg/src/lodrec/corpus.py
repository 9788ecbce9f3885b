"""Video metadata records and the JSON-lines corpus format.

One record per line, UTF-8:

    {"id": str, "language": str, "title": str, "abstract": str,
     "tags": [{"surface": str, "provenance": str}]}

Tags may additionally carry a ``gnd_id`` key once an authority link is
known.  JSON-lines is the canonical interchange format; the N-Triples
subset reader in :mod:`lodrec.ntriples` produces the same records.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateIdError, ParseError

PROVENANCES = ("manual", "transcript", "ocr", "visual")

_LANGUAGE_RE = re.compile(r"^[a-z]{2}$")


@dataclass(frozen=True)
class Tag:
    """One keyword with its origin.

    ``surface`` is trimmed but case-preserved at ingest; case folding
    happens only in tokenization and authority lookup.
    """

    surface: str
    provenance: str
    gnd_id: str | None = None


@dataclass(frozen=True)
class VideoRecord:
    id: str
    language: str
    title: str
    abstract: str
    tags: tuple[Tag, ...]


@dataclass
class Corpus:
    records: list[VideoRecord]
    language_filter: str | None = None
    # Diagnostic only; excluded from equality so save/load round-trips.
    dropped_count: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def ids(self) -> list[str]:
        return [r.id for r in self.records]


def _build_record(obj: dict, path, line_no: int) -> VideoRecord:
    """Validate one decoded record; raises ParseError on bad fields."""
    for key in ("id", "language", "title", "abstract", "tags"):
        if key not in obj:
            raise ParseError(path, line_no, f"missing field {key!r}")
    vid = obj["id"]
    if not isinstance(vid, str) or not vid:
        raise ParseError(path, line_no, "id must be a non-empty string")
    language = obj["language"]
    if not isinstance(language, str) or not _LANGUAGE_RE.match(language):
        raise ParseError(
            path, line_no,
            f"language must be a two-letter lowercase code, got {language!r}",
        )
    tags = []
    for t in obj["tags"]:
        surface = t.get("surface", "").strip()
        if not surface:
            raise ParseError(path, line_no, "tag surface empty after trimming")
        provenance = t.get("provenance")
        if provenance not in PROVENANCES:
            raise ParseError(
                path, line_no,
                f"unknown provenance value {provenance!r} "
                f"(expected one of {', '.join(PROVENANCES)})",
            )
        tags.append(Tag(surface=surface, provenance=provenance,
                        gnd_id=t.get("gnd_id")))
    return VideoRecord(
        id=vid,
        language=language,
        title=str(obj["title"]),
        abstract=str(obj["abstract"]),
        tags=tuple(tags),
    )


def _read_jsonl(path) -> list[VideoRecord]:
    records = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(path, line_no, f"invalid JSON: {e.msg}") from e
            if not isinstance(obj, dict):
                raise ParseError(path, line_no, "record must be a JSON object")
            records.append(_build_record(obj, path, line_no))
    return records


def load_corpus(path, format: str = "jsonl",
                language_filter: str | None = None) -> Corpus:
    """Load and validate a corpus file.

    Records whose language differs from ``language_filter`` are dropped
    (count kept on the returned Corpus).  Duplicate ids are a hard error:
    silent overwrite would corrupt the similarity indices downstream.
    """
    path = Path(path)
    if format == "jsonl":
        records = _read_jsonl(path)
    elif format == "ntriples":
        from .ntriples import read_ntriples
        records = read_ntriples(path)
    else:
        raise ValueError(f"unknown corpus format: {format!r}")

    seen: set[str] = set()
    for r in records:
        if r.id in seen:
            raise DuplicateIdError(f"duplicate video id: {r.id!r}")
        seen.add(r.id)

    dropped = 0
    if language_filter is not None:
        kept = [r for r in records if r.language == language_filter]
        dropped = len(records) - len(kept)
        records = kept
    return Corpus(records=records, language_filter=language_filter,
                  dropped_count=dropped)


def _tag_to_obj(tag: Tag) -> dict:
    obj = {"surface": tag.surface, "provenance": tag.provenance}
    if tag.gnd_id is not None:
        obj["gnd_id"] = tag.gnd_id
    return obj


def record_to_obj(record: VideoRecord) -> dict:
    return {
        "id": record.id,
        "language": record.language,
        "title": record.title,
        "abstract": record.abstract,
        "tags": [_tag_to_obj(t) for t in record.tags],
    }


def save_corpus(corpus: Corpus, path) -> None:
    """Write the corpus as JSON-lines, preserving record order."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        for record in corpus.records:
            f.write(json.dumps(record_to_obj(record), ensure_ascii=False))
            f.write("\n")


def with_language_filter(corpus: Corpus, language: str) -> Corpus:
    """Filtered copy; filtering an already-filtered corpus drops nothing."""
    kept = [r for r in corpus.records if r.language == language]
    return Corpus(records=kept, language_filter=language,
                  dropped_count=len(corpus.records) - len(kept))


__all__ = [
    "Corpus", "Tag", "VideoRecord", "PROVENANCES",
    "load_corpus", "save_corpus", "record_to_obj", "with_language_filter",
]
