"""Unicode normalization, sentence splitting, and tokenization for Vietnamese legal prose.

Sentence boundaries are rule based: terminal punctuation followed by an
uppercase letter or digit opens a new sentence, with exceptions for known
abbreviations and for periods used as digit group separators ("1.000.000").
Line breaks split sentences only when the line ends with a colon or the next
line starts a list item, because judgment decisions are written as
semicolon- or marker-delimited clauses.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import ValidationError

#: Sentence-terminal punctuation. ";" is included because decision clauses in
#: Vietnamese judgments are semicolon-delimited items.
_TERMINALS = ".!?;"

_SPACE_RUN = re.compile(r" {2,}")
_LIST_MARKER = re.compile(r"[-+]|\d+[.)]")

# Vietnamese uppercase letters (precomposed) used to seed single-initial
# abbreviations like "B." or "Ô." in the default table.
_VN_UPPER = (
    "ĐÁÀẢÃẠĂẮẰẲẴẶÂẤẦẨẪẬ"
    "ÉÈẺẼẸÊẾỀỂỄỆÍÌỈĨỊ"
    "ÓÒỎÕỌÔỐỒỔỖỘƠỚỜỞỠỢ"
    "ÚÙỦŨỤƯỨỪỬỮỰÝỲỶỸỴ"
)

_NAMED_ABBREVIATIONS = ("TP.", "Tp.", "ThS.", "TS.", "Ô.", "B.", "Nr.", "St.")


@dataclass(frozen=True)
class NormalizedText:
    """NFC text with LF line endings plus the offsets where each line starts."""

    text: str
    line_offsets: tuple[int, ...]

    def lines(self) -> list[str]:
        return self.text.split("\n")


@dataclass(frozen=True)
class Sentence:
    """A sentence slice of a section body.

    ``start``/``end`` index into the section text; ``text`` is exactly the
    slice (boundaries are tightened to non-whitespace characters).
    """

    index: int
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class AbbreviationTable:
    """Strings ending in "." that never terminate a sentence."""

    entries: frozenset[str]

    def __post_init__(self) -> None:
        bad = [e for e in self.entries if not e.endswith(".")]
        if bad:
            raise ValidationError(f"abbreviation entries must end with '.': {bad!r}")

    def matches_at(self, text: str, period_index: int) -> bool:
        """True if the period at ``period_index`` completes a table entry.

        The entry must begin at a word boundary so that e.g. "TP." does not
        fire inside "HTTP.".
        """
        end = period_index + 1
        for length in self._lengths():
            start = end - length
            if start < 0:
                continue
            if text[start:end] not in self.entries:
                continue
            if start == 0 or not text[start - 1].isalnum():
                return True
        return False

    def _lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(e) for e in self.entries}))


def default_abbreviation_table() -> AbbreviationTable:
    """Named abbreviations plus every single uppercase initial ("A." ... "Ỵ.")."""
    initials = {c + "." for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ" + _VN_UPPER}
    return AbbreviationTable(frozenset(_NAMED_ABBREVIATIONS) | initials)


def load_abbreviation_table(path: str | Path) -> AbbreviationTable:
    """Read one abbreviation per line; blank lines and "#" comments ignored."""
    entries: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        item = line.strip()
        if not item or item.startswith("#"):
            continue
        entries.add(unicodedata.normalize("NFC", item))
    return AbbreviationTable(frozenset(entries))


def line_starts(text: str) -> tuple[int, ...]:
    """Offsets at which lines begin; always starts with 0."""
    offsets = [0]
    for i, ch in enumerate(text):
        if ch == "\n":
            offsets.append(i + 1)
    return tuple(offsets)


def normalize_text(raw: str) -> NormalizedText:
    """Normalize ``raw`` to NFC, LF-only, single-spaced, line-trimmed text."""
    text = unicodedata.normalize("NFC", raw)
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    text = text.replace("\t", " ")
    text = _SPACE_RUN.sub(" ", text)
    text = "\n".join(line.strip() for line in text.split("\n"))
    return NormalizedText(text=text, line_offsets=line_starts(text))


def split_sentences(
    text: str, abbrevs: AbbreviationTable | None = None
) -> list[Sentence]:
    """Split normalized ``text`` into sentences.

    Boundary rules:
      * ".", "!", "?", ";" followed by whitespace and then an uppercase
        letter or a digit;
      * a newline ending a line whose last character is ":";
      * a newline whose next line starts with a list marker
        ("-", "+", "1)", "1.");
      * a period completing an abbreviation entry, or flanked by digits,
        never splits.

    Every non-whitespace character lands in exactly one sentence; slices are
    tight, so joining slices with the skipped whitespace rebuilds the input.
    """
    if abbrevs is None:
        abbrevs = default_abbreviation_table()

    n = len(text)
    ends: set[int] = set()

    for i, ch in enumerate(text):
        if ch in _TERMINALS:
            if ch == "." and _protected_period(text, i, abbrevs):
                continue
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            if j > i + 1 and j < n and (text[j].isupper() or text[j].isdigit()):
                ends.add(i + 1)
        elif ch == "\n":
            if _newline_splits(text, i):
                ends.add(i)

    return _assemble(text, sorted(ends))


def tokenize(sentence_text: str) -> list[str]:
    """Lowercased maximal runs of letters and digits; punctuation dropped.

    Tokens are syllables, not segmented words: "Tòa án" -> ["tòa", "án"].
    """
    return [m.group(0).lower() for m in re.finditer(r"[^\W_]+", sentence_text)]


def _protected_period(text: str, i: int, abbrevs: AbbreviationTable) -> bool:
    if 0 < i < len(text) - 1 and text[i - 1].isdigit() and text[i + 1].isdigit():
        return True
    if _completes_line_initial_marker(text, i):
        return True
    return abbrevs.matches_at(text, i)


def _completes_line_initial_marker(text: str, i: int) -> bool:
    """True when the period at ``i`` ends an enumerator opening its line.

    "1." at a line start is the marker that introduces the item (the same
    marker the newline rule recognizes), so its period must not cut the
    item text off from its number.
    """
    j = i
    while j > 0 and text[j - 1].isdigit():
        j -= 1
    return j < i and (j == 0 or text[j - 1] == "\n")


def _newline_splits(text: str, i: int) -> bool:
    """Whether the newline at ``i`` is a sentence boundary."""
    before = text[:i].rsplit("\n", 1)[-1].rstrip()
    if before.endswith(":"):
        return True
    after = text[i + 1 :].split("\n", 1)[0].lstrip()
    return bool(_LIST_MARKER.match(after))


def _assemble(text: str, ends: list[int]) -> list[Sentence]:
    sentences: list[Sentence] = []
    start = _skip_ws(text, 0)
    for boundary in ends:
        if boundary <= start:
            continue
        _emit(text, start, boundary, sentences)
        start = _skip_ws(text, boundary)
    if start < len(text):
        _emit(text, start, len(text), sentences)
    return sentences


def _emit(text: str, start: int, end: int, out: list[Sentence]) -> None:
    while end > start and text[end - 1].isspace():
        end -= 1
    if end > start:
        out.append(Sentence(index=len(out), text=text[start:end], start=start, end=end))


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i
