"""Per-section extractive summarization and best-summary selection.

Each summarizable section is scored by the chosen method (graph ranking or
the supervised scorer), a sentence budget is allocated from the compression
ratio, and bullets are picked greedily by maximal marginal relevance so that
repeated boilerplate does not crowd the summary. In automatic mode every
available method produces a candidate and a reference-free quality score
decides which one is served.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from collections.abc import Callable, Mapping, Sequence

from .errors import ConfigurationError, ValidationError
from .graph import (
    GraphMethod,
    build_similarity_graph,
    cosine_similarity,
    overlap_similarity,
    tfidf_vectors,
)
from .ranking import RankingConfig, power_iterate
from .scorer import ScoringModel, build_section_context, extract_features, predict
from .sections import HEADED_KINDS, ParsedJudgment, Section, SectionKind
from .text import Sentence, tokenize

#: Edge thresholds for the two graph configurations.
TEXTRANK_EDGE_THRESHOLD = 0.0
LEXRANK_EDGE_THRESHOLD = 0.1


class SummaryMethod(enum.Enum):
    TEXTRANK = "textrank"
    LEXRANK = "lexrank"
    SUPERVISED = "supervised"
    AUTO = "auto"

    @property
    def order(self) -> int:
        """Tie-break order among concrete methods; AUTO has no rank."""
        return _METHOD_ORDER.index(self)

    @classmethod
    def from_label(cls, label: str) -> "SummaryMethod":
        for method in cls:
            if method.value == label:
                return method
        raise ValidationError(f"unknown summary method: {label!r}")


_METHOD_ORDER = [SummaryMethod.TEXTRANK, SummaryMethod.LEXRANK, SummaryMethod.SUPERVISED]


@dataclass(frozen=True)
class SummaryConfig:
    """Knobs for budgeting, redundancy control, and quality scoring."""

    ratio: float = 0.3
    min_per_section: int = 1
    mmr_lambda: float = 0.7
    include_introduction: bool = False
    coverage_weight: float = 0.6
    redundancy_weight: float = 0.3
    length_weight: float = 0.1
    coverage_terms: int = 20
    ranking: RankingConfig = field(default_factory=RankingConfig)

    def __post_init__(self) -> None:
        if not 0.0 < self.ratio <= 1.0:
            raise ValueError("ratio must be in (0, 1]")
        if not 0.0 <= self.mmr_lambda <= 1.0:
            raise ValueError("mmr_lambda must be in [0, 1]")
        if self.min_per_section < 0:
            raise ValueError("min_per_section must be >= 0")
        if self.coverage_terms < 1:
            raise ValueError("coverage_terms must be >= 1")
        weights = (self.coverage_weight, self.redundancy_weight, self.length_weight)
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError("quality weights must be non-negative and sum to 1")


@dataclass
class SectionSummary:
    kind: SectionKind
    bullets: list[Sentence]
    source_count: int


@dataclass
class CaseSummary:
    case_id: str
    method: SummaryMethod
    sections: dict[SectionKind, SectionSummary]
    combined_text: str
    quality: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "method": self.method.value,
            "quality": self.quality,
            "ratio": self.ratio,
            "sections": [
                {
                    "kind": s.kind.label,
                    "bullets": [b.text for b in s.bullets],
                    "source_count": s.source_count,
                }
                for s in self.sections.values()
            ],
            "combined_text": self.combined_text,
        }


def allocate_budget(
    section_sentence_counts: Mapping[SectionKind, int], cfg: SummaryConfig
) -> dict[SectionKind, int]:
    """k = min(n, max(min_per_section, ceil(ratio * n))); empty sections get 0."""
    budgets: dict[SectionKind, int] = {}
    for kind, n in section_sentence_counts.items():
        if n <= 0:
            budgets[kind] = 0
        else:
            budgets[kind] = min(n, max(cfg.min_per_section, math.ceil(cfg.ratio * n)))
    return budgets


def score_section(
    section: Section,
    method: SummaryMethod,
    cfg: SummaryConfig | None = None,
    model: ScoringModel | None = None,
) -> list[float]:
    """One relevance score per sentence of ``section``."""
    if cfg is None:
        cfg = SummaryConfig()
    texts = [s.text for s in section.sentences]
    if method is SummaryMethod.TEXTRANK:
        tokens = [tokenize(t) for t in texts]
        graph = build_similarity_graph(tokens, GraphMethod.OVERLAP, TEXTRANK_EDGE_THRESHOLD)
        return power_iterate(graph, cfg.ranking).scores
    if method is SummaryMethod.LEXRANK:
        tokens = [tokenize(t) for t in texts]
        graph = build_similarity_graph(
            tokens, GraphMethod.TFIDF_COSINE, LEXRANK_EDGE_THRESHOLD
        )
        return power_iterate(graph, cfg.ranking).scores
    if method is SummaryMethod.SUPERVISED:
        if model is None:
            raise ConfigurationError("supervised scoring requires a model")
        ctx = build_section_context(texts, section.heading_line)
        return [
            predict(model, extract_features(i, ctx, model.cue_phrases))
            for i in range(len(texts))
        ]
    raise ValidationError(f"cannot score with method {method.value!r}")


def select_bullets(
    sentences: Sequence[Sentence],
    scores: Sequence[float],
    k: int,
    mmr_lambda: float,
    similarity: Callable[[int, int], float],
) -> list[Sentence]:
    """Greedy maximal marginal relevance pick of ``k`` sentences.

    The first pick is the plain argmax of the scores; afterwards candidate i
    is valued at lambda * score_i - (1 - lambda) * max_selected sim(i, .).
    Ties go to the earlier sentence. The result is in document order.
    """
    if not 0 <= k <= len(sentences):
        raise ValueError("k must be between 0 and the sentence count")
    selected: list[int] = []
    remaining = list(range(len(sentences)))
    while len(selected) < k:
        best_idx = None
        best_value = -math.inf
        for i in remaining:
            if not selected:
                value = scores[i]
            else:
                penalty = max(similarity(i, j) for j in selected)
                value = mmr_lambda * scores[i] - (1.0 - mmr_lambda) * penalty
            if value > best_value:
                best_value = value
                best_idx = i
        selected.append(best_idx)  # type: ignore[arg-type]
        remaining.remove(best_idx)
    return [sentences[i] for i in sorted(selected)]


def summarize_document(
    parsed: ParsedJudgment,
    method: SummaryMethod = SummaryMethod.AUTO,
    cfg: SummaryConfig | None = None,
    model: ScoringModel | None = None,
    case_id: str = "",
) -> CaseSummary:
    """Summarize each summarizable section and combine the bullets.

    AUTO generates one candidate per available method (supervised only when a
    model is present) and keeps the highest-quality one.
    """
    if cfg is None:
        cfg = SummaryConfig()
    if method is SummaryMethod.AUTO:
        candidates = [SummaryMethod.TEXTRANK, SummaryMethod.LEXRANK]
        if model is not None:
            candidates.append(SummaryMethod.SUPERVISED)
        return select_best(
            [summarize_document(parsed, m, cfg, model, case_id) for m in candidates]
        )
    if method is SummaryMethod.SUPERVISED and model is None:
        raise ConfigurationError("supervised summarization requires a model")

    kinds = list(HEADED_KINDS)
    if cfg.include_introduction:
        kinds.insert(0, SectionKind.INTRODUCTION)

    budgets = allocate_budget(
        {kind: len(parsed.section(kind).sentences) for kind in kinds}, cfg
    )
    sections: dict[SectionKind, SectionSummary] = {}
    for kind in kinds:
        section = parsed.section(kind)
        scores = score_section(section, method, cfg, model)
        bullets = select_bullets(
            section.sentences,
            scores,
            budgets[kind],
            cfg.mmr_lambda,
            _section_similarity(section, method),
        )
        sections[kind] = SectionSummary(
            kind=kind, bullets=bullets, source_count=len(section.sentences)
        )

    summary = CaseSummary(
        case_id=case_id,
        method=method,
        sections=sections,
        combined_text=combine_text(sections),
        quality=0.0,
        ratio=cfg.ratio,
    )
    summary.quality = quality_score(summary, parsed, cfg)
    return summary


def combine_text(sections: Mapping[SectionKind, SectionSummary]) -> str:
    """Bullets as "- " lines, sections in kind order, blank line between."""
    blocks = []
    for kind in sorted(sections):
        bullets = sections[kind].bullets
        if bullets:
            blocks.append("\n".join("- " + b.text for b in bullets))
    return "\n\n".join(blocks)


def quality_score(
    summary: CaseSummary, parsed: ParsedJudgment, cfg: SummaryConfig | None = None
) -> float:
    """Reference-free quality in [0, 1].

    Weighted sum of three terms over the summarized sections: coverage of
    the document's top tf-isf terms, one minus the mean pairwise cosine of
    the bullets, and how close the bullet count is to the target ratio.
    """
    if cfg is None:
        cfg = SummaryConfig()
    kinds = sorted(summary.sections)

    pooled_tokens: list[list[str]] = []
    offsets: dict[SectionKind, int] = {}
    for kind in kinds:
        offsets[kind] = len(pooled_tokens)
        for sentence in parsed.section(kind).sentences:
            pooled_tokens.append(tokenize(sentence.text))

    bullet_indices: list[int] = []
    for kind in kinds:
        for bullet in summary.sections[kind].bullets:
            bullet_indices.append(offsets[kind] + bullet.index)

    vectors = tfidf_vectors(pooled_tokens)
    coverage = _coverage(vectors, pooled_tokens, bullet_indices, cfg.coverage_terms)
    redundancy = _mean_pairwise_cosine([vectors[i] for i in bullet_indices])

    total = len(pooled_tokens)
    if total == 0:
        length_fit = 0.0
    else:
        r = len(bullet_indices) / total
        length_fit = max(0.0, 1.0 - abs(r - cfg.ratio) / cfg.ratio)

    return (
        cfg.coverage_weight * coverage
        + cfg.redundancy_weight * (1.0 - redundancy)
        + cfg.length_weight * length_fit
    )


def select_best(candidates: Sequence[CaseSummary]) -> CaseSummary:
    """Highest quality wins; exact ties go to the earlier method in
    textrank < lexrank < supervised order."""
    if not candidates:
        raise ValidationError("no candidate summaries to select from")
    return min(candidates, key=lambda s: (-s.quality, s.method.order))


# --- internals -------------------------------------------------------------


def _section_similarity(
    section: Section, method: SummaryMethod
) -> Callable[[int, int], float]:
    """The method's own pairwise similarity, memoized, for MMR penalties.

    The supervised method has no intrinsic similarity; tf-isf cosine is used
    for its redundancy penalty.
    """
    tokens = [tokenize(s.text) for s in section.sentences]
    cache: dict[tuple[int, int], float] = {}
    if method is SummaryMethod.TEXTRANK:
        def compute(i: int, j: int) -> float:
            return overlap_similarity(tokens[i], tokens[j])
    else:
        vectors = tfidf_vectors(tokens)

        def compute(i: int, j: int) -> float:
            return cosine_similarity(vectors[i], vectors[j])

    def sim(i: int, j: int) -> float:
        key = (i, j) if i < j else (j, i)
        if key not in cache:
            cache[key] = compute(*key)
        return cache[key]

    return sim


def _coverage(
    vectors: list[dict[str, float]],
    pooled_tokens: list[list[str]],
    bullet_indices: list[int],
    top_k: int,
) -> float:
    totals: dict[str, float] = {}
    for vec in vectors:
        for term, weight in vec.items():
            totals[term] = totals.get(term, 0.0) + weight
    if not totals:
        return 0.0
    top_terms = [t for t, _ in sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))]
    top_terms = top_terms[:top_k]
    summary_tokens = {t for i in bullet_indices for t in pooled_tokens[i]}
    present = sum(1 for t in top_terms if t in summary_tokens)
    return present / len(top_terms)


def _mean_pairwise_cosine(vectors: list[dict[str, float]]) -> float:
    if len(vectors) < 2:
        return 0.0
    total = 0.0
    pairs = 0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            total += cosine_similarity(vectors[i], vectors[j])
            pairs += 1
    return total / pairs


def resolve_config(
    base: SummaryConfig | None = None,
    *,
    ratio: float | None = None,
    include_introduction: bool | None = None,
) -> SummaryConfig:
    """Apply optional request-level overrides to a config."""
    cfg = base or SummaryConfig()
    updates: dict = {}
    if ratio is not None:
        updates["ratio"] = ratio
    if include_introduction is not None:
        updates["include_introduction"] = include_introduction
    return replace(cfg, **updates) if updates else cfg
