"""ROUGE scoring of produced summaries against gold summaries."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from collections.abc import Sequence

from .errors import ConfigurationError
from .scorer import ScoringModel
from .sections import parse_judgment
from .store import CaseStore
from .summarize import SummaryConfig, SummaryMethod, summarize_document
from .text import normalize_text, tokenize


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, match: float, cand_total: int, ref_total: int) -> "RougeScore":
        p = match / cand_total if cand_total > 0 else 0.0
        r = match / ref_total if ref_total > 0 else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(precision=p, recall=r, f1=f1)

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    """Clipped n-gram overlap: each distinct n-gram matches at most
    min(candidate count, reference count) times."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngram_counts(candidate, n)
    ref = _ngram_counts(reference, n)
    match = sum(min(c, ref[g]) for g, c in cand.items() if g in ref)
    return RougeScore.from_counts(match, sum(cand.values()), sum(ref.values()))


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """Token-level longest common subsequence, exact via DP."""
    lcs = _lcs_length(candidate, reference)
    return RougeScore.from_counts(lcs, len(candidate), len(reference))


@dataclass
class EvalReport:
    """Per-case ROUGE per method, corpus means, and the skipped-case count."""

    per_case: dict[str, dict[str, dict[str, RougeScore]]] = field(default_factory=dict)
    means: dict[str, dict[str, RougeScore]] = field(default_factory=dict)
    skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "cases": {
                cid: {
                    m: {name: s.to_dict() for name, s in metrics.items()}
                    for m, metrics in methods.items()
                }
                for cid, methods in self.per_case.items()
            },
            "means": {
                m: {name: s.to_dict() for name, s in metrics.items()}
                for m, metrics in self.means.items()
            },
            "skipped": self.skipped,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )


def evaluate_corpus(
    store: CaseStore,
    methods: Sequence[SummaryMethod],
    cfg: SummaryConfig | None = None,
    model: ScoringModel | None = None,
) -> EvalReport:
    """Summarize every case that has a gold file and score it per method.

    Gold summaries live next to the case files as "<id>.gold.txt"; cases
    without one are counted in ``skipped``.
    """
    if cfg is None:
        cfg = SummaryConfig()
    if SummaryMethod.SUPERVISED in methods and model is None:
        raise ConfigurationError("supervised evaluation requires a model")

    report = EvalReport()
    for case_id in store.ids():
        gold_file = store.gold_path(case_id)
        if not gold_file.exists():
            report.skipped += 1
            continue
        gold_tokens = tokenize(gold_file.read_text(encoding="utf-8"))
        parsed = parse_judgment(normalize_text(store.get(case_id).raw_text))
        row: dict[str, dict[str, RougeScore]] = {}
        for method in methods:
            summary = summarize_document(parsed, method, cfg, model, case_id=case_id)
            cand_tokens = tokenize(summary.combined_text)
            row[method.value] = {
                "rouge1": rouge_n(cand_tokens, gold_tokens, 1),
                "rouge2": rouge_n(cand_tokens, gold_tokens, 2),
                "rougeL": rouge_l(cand_tokens, gold_tokens),
            }
        report.per_case[case_id] = row

    report.means = _means(report.per_case)
    # every requested method gets a means entry even if nothing was scored
    for method in methods:
        report.means.setdefault(
            method.value,
            {name: RougeScore(0.0, 0.0, 0.0) for name in ("rouge1", "rouge2", "rougeL")},
        )
    return report


def _ngram_counts(tokens: Sequence[str], n: int) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for i in range(len(tokens) - n + 1):
        gram = tuple(tokens[i : i + n])
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def _lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for x in a:
        prev = 0
        for j, y in enumerate(b, start=1):
            cur = row[j]
            row[j] = prev + 1 if x == y else max(row[j], row[j - 1])
            prev = cur
    return row[len(b)]


def _means(
    per_case: dict[str, dict[str, dict[str, RougeScore]]],
) -> dict[str, dict[str, RougeScore]]:
    sums: dict[str, dict[str, list[float]]] = {}
    counts: dict[str, int] = {}
    for row in per_case.values():
        for method, metrics in row.items():
            counts[method] = counts.get(method, 0) + 1
            bucket = sums.setdefault(method, {})
            for name, score in metrics.items():
                acc = bucket.setdefault(name, [0.0, 0.0, 0.0])
                acc[0] += score.precision
                acc[1] += score.recall
                acc[2] += score.f1
    means: dict[str, dict[str, RougeScore]] = {}
    for method, bucket in sums.items():
        n = counts[method]
        means[method] = {
            name: RougeScore(precision=p / n, recall=r / n, f1=f / n)
            for name, (p, r, f) in bucket.items()
        }
    return means
