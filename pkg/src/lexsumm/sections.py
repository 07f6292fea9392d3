"""Split a court judgment into its statutory sections.

A judgment opens with an introduction and then carries three headed parts:
the case content, the court's assessment, and the decision. Headings are
conventionally written as standalone uppercase lines ("NỘI DUNG VỤ ÁN",
"QUYẾT ĐỊNH", ...), so detection is whole-line, case-insensitive, and
diacritic-sensitive. When headings are missing or out of order the parser
keeps the best consistent chain and falls back to a degraded single-section
parse rather than failing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .errors import ValidationError
from .text import (
    AbbreviationTable,
    NormalizedText,
    Sentence,
    line_starts,
    split_sentences,
)


class SectionKind(enum.IntEnum):
    """The four judgment sections, in document order."""

    INTRODUCTION = 0
    CONTENT = 1
    ASSESSMENT = 2
    DECISION = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "SectionKind":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValidationError(f"unknown section kind: {label!r}") from None


#: Kinds that carry summary content; the introduction is the unheaded prefix.
HEADED_KINDS = (SectionKind.CONTENT, SectionKind.ASSESSMENT, SectionKind.DECISION)

_DEFAULT_PATTERNS: dict[SectionKind, tuple[str, ...]] = {
    SectionKind.CONTENT: ("NỘI DUNG VỤ ÁN",),
    SectionKind.ASSESSMENT: (
        "NHẬN ĐỊNH CỦA TÒA ÁN",
        "NHẬN ĐỊNH CỦA HỘI ĐỒNG XÉT XỬ",
        "XÉT THẤY",
    ),
    SectionKind.DECISION: ("QUYẾT ĐỊNH", "VÌ CÁC LẼ TRÊN"),
}


@dataclass(frozen=True)
class HeadingPatternTable:
    """Per-kind heading strings, matched against whole trimmed lines.

    Matching is case-insensitive but keeps diacritics, and tolerates one
    trailing ":" on the line. The introduction has no patterns: it is the
    region before the first matched heading.
    """

    patterns: dict[SectionKind, tuple[str, ...]]

    def match_line(self, line: str) -> SectionKind | None:
        """Kind whose pattern equals the trimmed line, or None."""
        candidate = line.strip()
        if candidate.endswith(":"):
            candidate = candidate[:-1].rstrip()
        folded = candidate.casefold()
        for kind in HEADED_KINDS:
            for pattern in self.patterns.get(kind, ()):
                if folded == pattern.casefold():
                    return kind
        return None


@dataclass(frozen=True)
class HeadingMatch:
    line_index: int
    kind: SectionKind
    raw_line: str


@dataclass
class Section:
    """One section region: optional heading line, body text, and sentences."""

    kind: SectionKind
    heading_line: str | None
    body: NormalizedText
    sentences: list[Sentence]
    start_line: int
    end_line: int

    @property
    def is_empty(self) -> bool:
        return self.body.text.strip() == ""


@dataclass
class ParsedJudgment:
    """All four sections of a judgment, covering the document exactly.

    ``degraded`` is set when no heading was found (the whole text is filed
    under CONTENT) or when the headed sections carry no text.
    """

    text: str
    sections: dict[SectionKind, Section]
    degraded: bool
    headings: list[HeadingMatch] = field(default_factory=list)

    def section(self, kind: SectionKind) -> Section:
        return self.sections[kind]

    def reassemble(self) -> str:
        """Rebuild the document from section regions; integrity check."""
        lines = self.text.split("\n")
        pieces: list[str] = []
        for sec in self.sections.values():
            start = sec.start_line
            if sec.heading_line is not None:
                pieces.append(lines[start])
                start += 1
            if sec.end_line > start:
                pieces.append("\n".join(lines[start : sec.end_line]))
        return "\n".join(pieces)


def default_heading_patterns() -> HeadingPatternTable:
    return HeadingPatternTable(dict(_DEFAULT_PATTERNS))


def load_heading_patterns(path: str | Path) -> HeadingPatternTable:
    """Read "key=pattern" lines; keys content/assessment/decision, repeatable."""
    table: dict[SectionKind, list[str]] = {k: [] for k in HEADED_KINDS}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, pattern = line.partition("=")
        if not sep:
            raise ValidationError(f"expected key=pattern, got {line!r}")
        kind = SectionKind.from_label(key.strip())
        if kind not in HEADED_KINDS:
            raise ValidationError(f"heading patterns not allowed for {key.strip()!r}")
        table[kind].append(pattern.strip())
    return HeadingPatternTable({k: tuple(v) for k, v in table.items() if v})


def detect_headings(
    doc: NormalizedText, patterns: HeadingPatternTable | None = None
) -> list[HeadingMatch]:
    """Find the best kind-consistent chain of heading lines.

    Every line is tested against the pattern table; among the raw matches the
    longest chain with strictly increasing kinds (and line numbers) wins.
    Length ties prefer the chain whose kinds come earliest in section order,
    then the earliest lines, which drops out-of-order strays such as a
    decision heading printed above the content heading.
    """
    if patterns is None:
        patterns = default_heading_patterns()
    raw: list[HeadingMatch] = []
    for idx, line in enumerate(doc.lines()):
        kind = patterns.match_line(line)
        if kind is not None:
            raw.append(HeadingMatch(line_index=idx, kind=kind, raw_line=line))
    return _best_chain(raw)


def _best_chain(raw: list[HeadingMatch]) -> list[HeadingMatch]:
    by_kind: dict[SectionKind, list[HeadingMatch]] = {}
    for m in raw:
        by_kind.setdefault(m.kind, []).append(m)
    present = [k for k in HEADED_KINDS if k in by_kind]

    best: list[HeadingMatch] = []
    best_key: tuple = ()
    for size in range(len(present), 0, -1):
        for kinds in combinations(present, size):
            chain = _realize(kinds, by_kind)
            if chain is None:
                continue
            key = tuple(int(m.kind) for m in chain)
            if len(chain) > len(best) or (len(chain) == len(best) and key < best_key):
                best, best_key = chain, key
        if best:
            break
    return best


def _realize(
    kinds: tuple[SectionKind, ...], by_kind: dict[SectionKind, list[HeadingMatch]]
) -> list[HeadingMatch] | None:
    """Greedily take each kind's earliest match after the previous one."""
    chain: list[HeadingMatch] = []
    floor = -1
    for kind in kinds:
        match = next((m for m in by_kind[kind] if m.line_index > floor), None)
        if match is None:
            return None
        chain.append(match)
        floor = match.line_index
    return chain


def parse_judgment(
    doc: NormalizedText,
    patterns: HeadingPatternTable | None = None,
    abbrevs: AbbreviationTable | None = None,
) -> ParsedJudgment:
    """Split ``doc`` into sections and sentence-split each body.

    The prefix before the first heading is the introduction; each heading
    owns the lines up to the next heading. With no heading at all the whole
    text becomes CONTENT and the parse is degraded.
    """
    lines = doc.lines()
    matches = detect_headings(doc, patterns)

    sections: dict[SectionKind, Section] = {}
    if not matches:
        empty_doc = doc.text == ""
        for kind in SectionKind:
            if kind is SectionKind.CONTENT and not empty_doc:
                sections[kind] = _region(doc.text, lines, kind, None, 0, len(lines), abbrevs)
            else:
                at = 0 if kind <= SectionKind.CONTENT or empty_doc else len(lines)
                sections[kind] = _empty_section(kind, at)
        return ParsedJudgment(text=doc.text, sections=sections, degraded=True)

    matched = {m.kind: m for m in matches}
    boundaries = [m.line_index for m in matches] + [len(lines)]

    sections[SectionKind.INTRODUCTION] = _region(
        doc.text, lines, SectionKind.INTRODUCTION, None, 0, boundaries[0], abbrevs
    )
    cursor = 0
    for kind in HEADED_KINDS:
        if kind in matched:
            m = matched[kind]
            start = m.line_index
            end = boundaries[boundaries.index(start) + 1]
            sections[kind] = _region(doc.text, lines, kind, m.raw_line, start, end, abbrevs)
            cursor = end
        else:
            sections[kind] = _empty_section(kind, cursor)

    degraded = all(sections[k].is_empty for k in HEADED_KINDS)
    return ParsedJudgment(
        text=doc.text, sections=sections, degraded=degraded, headings=matches
    )


def _region(
    text: str,
    lines: list[str],
    kind: SectionKind,
    heading_line: str | None,
    start_line: int,
    end_line: int,
    abbrevs: AbbreviationTable | None,
) -> Section:
    body_start = start_line + 1 if heading_line is not None else start_line
    body_text = "\n".join(lines[body_start:end_line])
    body = NormalizedText(text=body_text, line_offsets=line_starts(body_text))
    return Section(
        kind=kind,
        heading_line=heading_line,
        body=body,
        sentences=split_sentences(body_text, abbrevs),
        start_line=start_line,
        end_line=end_line,
    )


def _empty_section(kind: SectionKind, at_line: int) -> Section:
    return Section(
        kind=kind,
        heading_line=None,
        body=NormalizedText(text="", line_offsets=(0,)),
        sentences=[],
        start_line=at_line,
        end_line=at_line,
    )
