"""Minimal N-Triples subset reader for video metadata.

Only the handful of predicates that map onto record fields are
interpreted; every other well-formed triple is skipped silently.  The
subject IRI is used verbatim as the video id.  Recognized predicates
(object must be a literal):

    http://purl.org/dc/terms/title          -> title
    http://purl.org/dc/terms/abstract       -> abstract
    http://purl.org/dc/terms/language       -> language
    http://example.org/scivideo#manualTag      -> tag (manual)
    http://example.org/scivideo#transcriptTag  -> tag (transcript)
    http://example.org/scivideo#ocrTag         -> tag (ocr)
    http://example.org/scivideo#visualTag      -> tag (visual)

For title/abstract/language the last triple wins; tags accumulate in
line order.  This is not a general RDF parser: long literals, relative
IRIs and anything beyond one triple per line are out of scope.
"""

from __future__ import annotations

import re
from pathlib import Path

from .corpus import Tag, VideoRecord, _LANGUAGE_RE
from .errors import ParseError

_TAG_NS = "http://example.org/scivideo#"
_DCT = "http://purl.org/dc/terms/"

FIELD_PREDICATES = {
    _DCT + "title": "title",
    _DCT + "abstract": "abstract",
    _DCT + "language": "language",
}
TAG_PREDICATES = {
    _TAG_NS + "manualTag": "manual",
    _TAG_NS + "transcriptTag": "transcript",
    _TAG_NS + "ocrTag": "ocr",
    _TAG_NS + "visualTag": "visual",
}

_TRIPLE_RE = re.compile(
    r"^(?:<(?P<subj>[^<>\s]*)>|(?P<subj_bnode>_:[A-Za-z0-9][A-Za-z0-9._-]*))\s+"
    r"<(?P<pred>[^<>\s]*)>\s+"
    r"(?:<(?P<obj_iri>[^<>\s]*)>"
    r"|(?P<obj_bnode>_:[A-Za-z0-9][A-Za-z0-9._-]*)"
    r'|"(?P<obj_lit>(?:[^"\\]|\\.)*)"'
    r"(?:@(?P<lang>[A-Za-z][A-Za-z0-9-]*)|\^\^<(?P<dtype>[^<>\s]*)>)?)"
    r"\s*\.\s*$"
)

_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}


def _unescape(lit: str, path, line_no: int) -> str:
    out = []
    i = 0
    while i < len(lit):
        c = lit[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= len(lit):
            raise ParseError(path, line_no, "dangling backslash in literal")
        esc = lit[i + 1]
        if esc in _ESCAPES:
            out.append(_ESCAPES[esc])
            i += 2
        elif esc in ("u", "U"):
            width = 4 if esc == "u" else 8
            hexpart = lit[i + 2:i + 2 + width]
            if len(hexpart) != width:
                raise ParseError(path, line_no, f"truncated \\{esc} escape")
            try:
                out.append(chr(int(hexpart, 16)))
            except ValueError:
                raise ParseError(path, line_no,
                                 f"invalid \\{esc} escape: {hexpart!r}") from None
            i += 2 + width
        else:
            raise ParseError(path, line_no, f"unknown escape \\{esc}")
    return "".join(out)


def read_ntriples(path) -> list[VideoRecord]:
    """Parse the subset and assemble records in order of first mention."""
    path = Path(path)
    # subject -> partial record state
    fields: dict[str, dict] = {}
    first_line: dict[str, int] = {}

    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            m = _TRIPLE_RE.match(stripped)
            if m is None:
                raise ParseError(path, line_no, f"not a triple: {stripped!r}")
            subj = m.group("subj")
            pred = m.group("pred")
            lit = m.group("obj_lit")
            if subj is None:
                continue  # blank-node subjects cannot name a video
            if lit is None:
                continue  # only literal objects carry field values
            if pred not in FIELD_PREDICATES and pred not in TAG_PREDICATES:
                continue
            value = _unescape(lit, path, line_no)

            if subj not in fields:
                fields[subj] = {"title": "", "abstract": "",
                                "language": None, "tags": []}
                first_line[subj] = line_no
            state = fields[subj]
            if pred in FIELD_PREDICATES:
                state[FIELD_PREDICATES[pred]] = value
            else:
                surface = value.strip()
                if not surface:
                    raise ParseError(path, line_no,
                                     "tag surface empty after trimming")
                state["tags"].append(
                    Tag(surface=surface, provenance=TAG_PREDICATES[pred]))

    records = []
    for subj, state in fields.items():
        language = state["language"]
        if language is None or not _LANGUAGE_RE.match(language):
            raise ParseError(
                path, first_line[subj],
                f"video <{subj}> has no valid language triple "
                f"(got {language!r})",
            )
        records.append(VideoRecord(
            id=subj,
            language=language,
            title=state["title"],
            abstract=state["abstract"],
            tags=tuple(state["tags"]),
        ))
    return records


__all__ = ["read_ntriples", "FIELD_PREDICATES", "TAG_PREDICATES"]
