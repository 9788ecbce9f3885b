"""Dewey Decimal Classification notations and their hierarchical fragments.

A DDC notation like ``005.133`` encodes its whole ancestry: every digit
prefix of the (normalized) code names a broader class.  Splitting a code
into level-indexed prefixes turns the class hierarchy into a flat set of
features, which is what the similarity vectors are built over.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Fragmentation modes.  ``zero_stripping`` removes leading zeros before
# taking prefixes, so 005.74 fragments as 5, 57, 574.  ``zero_preserving``
# keeps them, so the level-1 fragment of 005.74 is "0" (the true main
# class) and 005.x is never conflated with 5xx.
ZERO_STRIPPING = "zero_stripping"
ZERO_PRESERVING = "zero_preserving"
MODES = (ZERO_STRIPPING, ZERO_PRESERVING)
DEFAULT_MODE = ZERO_STRIPPING

# 1-3 integer digits, optional decimal part with at least one digit.
# Auxiliary-table notations (T1--0901 etc.) are deliberately not covered.
_CODE_RE = re.compile(r"^[0-9]{1,3}(?:\.[0-9]+)?$")


@dataclass(frozen=True)
class DdcCode:
    """A parsed DDC notation.

    ``raw`` is the notation as written ("005.133"); ``digits`` is the same
    string with the decimal point removed ("005133").
    """

    raw: str
    digits: str

    def __str__(self) -> str:
        return self.raw


@dataclass(frozen=True, order=True)
class Fragment:
    """One level-indexed prefix of a normalized code.

    ``level`` equals ``len(prefix)`` and indexes the depth in the class
    hierarchy.  Field order (level, prefix) makes the natural sort order
    the canonical vocabulary order.
    """

    level: int
    prefix: str

    def __post_init__(self):
        if self.level != len(self.prefix):
            raise ValueError(
                f"fragment level {self.level} != len({self.prefix!r})"
            )

    def __str__(self) -> str:
        return f"{self.prefix}@{self.level}"


def parse_code(s: str) -> DdcCode:
    """Parse a notation string, raising ValueError on grammar violations."""
    raw = s.strip()
    if not _CODE_RE.match(raw):
        raise ValueError(f"invalid DDC notation: {s!r}")
    return DdcCode(raw=raw, digits=raw.replace(".", ""))


def fragment_code(code: DdcCode | str,
                  mode: str = DEFAULT_MODE) -> list[Fragment]:
    """Split a code into its prefix fragments, ordered by level ascending."""
    if mode not in MODES:
        raise ValueError(f"unknown fragmentation mode: {mode!r}")
    if isinstance(code, str):
        code = parse_code(code)
    digits = code.digits
    if mode == ZERO_STRIPPING:
        digits = digits.lstrip("0") or "0"
    return [Fragment(i, digits[:i]) for i in range(1, len(digits) + 1)]
