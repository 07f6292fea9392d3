"""Trainable sentence scorer for the supervised summarization method.

A logistic model over six hand-built features estimates, per sentence, the
probability that it belongs in the summary. The summarizer only consumes the
"section in, scores out" interface, so a heavier scorer (e.g. a served
neural model) can replace this one without touching the pipeline.

Features, in order:
  0. relative position in the section
  1. relative token length
  2. mean tf-isf weight of the sentence's tokens
  3. Jaccard overlap with the section heading tokens
  4. cue phrase indicator
  5. numeral density

Training is full-batch gradient descent on the L2-regularized log loss with
zero-initialized weights and a fixed epoch count, which makes runs
deterministic and independent of example order (sums use math.fsum).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from collections.abc import Mapping, Sequence

from .errors import ConfigurationError, ModelDecodeError, ValidationError
from .graph import tfidf_vectors
from .sections import ParsedJudgment, SectionKind
from .text import tokenize

FEATURE_COUNT = 6
FEATURE_VERSION = "lexsumm-features-1"

DEFAULT_CUE_PHRASES: tuple[str, ...] = (
    "quyết định",
    "xét thấy",
    "chấp nhận",
    "không chấp nhận",
    "buộc",
    "tuyên bố",
    "án phí",
    "bồi thường",
    "kháng cáo",
)


@dataclass(frozen=True)
class SectionContext:
    """Everything feature extraction needs about one section."""

    texts: tuple[str, ...]
    token_lists: tuple[tuple[str, ...], ...]
    heading_tokens: frozenset[str]
    tfidf: tuple[dict[str, float], ...]
    max_tokens: int


@dataclass(frozen=True)
class ScoringModel:
    weights: tuple[float, ...]
    bias: float
    cue_phrases: tuple[str, ...] = DEFAULT_CUE_PHRASES
    version: str = FEATURE_VERSION

    def __post_init__(self) -> None:
        if len(self.weights) != FEATURE_COUNT:
            raise ValidationError(
                f"expected {FEATURE_COUNT} weights, got {len(self.weights)}"
            )
        if not all(math.isfinite(w) for w in self.weights) or not math.isfinite(self.bias):
            raise ValidationError("model weights must be finite")


@dataclass(frozen=True)
class LabeledSentence:
    case_id: str
    section: SectionKind
    sentence_index: int
    label: int


@dataclass
class TrainingRun:
    """A trained model plus the loss trajectory (losses[0] is pre-training)."""

    model: ScoringModel
    losses: list[float] = field(default_factory=list)


def build_section_context(
    sentence_texts: Sequence[str], heading_line: str | None
) -> SectionContext:
    token_lists = tuple(tuple(tokenize(t)) for t in sentence_texts)
    return SectionContext(
        texts=tuple(sentence_texts),
        token_lists=token_lists,
        heading_tokens=frozenset(tokenize(heading_line)) if heading_line else frozenset(),
        tfidf=tuple(tfidf_vectors(token_lists)),
        max_tokens=max((len(t) for t in token_lists), default=0),
    )


def extract_features(
    index: int, ctx: SectionContext, cue_phrases: Sequence[str] = DEFAULT_CUE_PHRASES
) -> tuple[float, ...]:
    """Six deterministic features for sentence ``index`` of the section."""
    n = len(ctx.token_lists)
    tokens = ctx.token_lists[index]

    position = index / (n - 1) if n > 1 else 0.0
    rel_length = len(tokens) / ctx.max_tokens if ctx.max_tokens else 0.0

    vec = ctx.tfidf[index]
    mean_tfisf = math.fsum(vec.values()) / len(vec) if vec else 0.0

    token_set = set(tokens)
    union = token_set | ctx.heading_tokens
    heading_overlap = len(token_set & ctx.heading_tokens) / len(union) if union else 0.0

    folded = ctx.texts[index].casefold()
    cue = 1.0 if any(p.casefold() in folded for p in cue_phrases) else 0.0

    numerals = sum(1 for t in tokens if t.isdigit())
    numeral_density = numerals / len(tokens) if tokens else 0.0

    return (position, rel_length, mean_tfisf, heading_overlap, cue, numeral_density)


def predict(model: ScoringModel, features: Sequence[float]) -> float:
    """sigmoid(w.x + b). Raises if the model's feature version is foreign."""
    if model.version != FEATURE_VERSION:
        raise ConfigurationError(
            f"model feature version {model.version!r} does not match {FEATURE_VERSION!r}"
        )
    if len(features) != FEATURE_COUNT:
        raise ValidationError(f"expected {FEATURE_COUNT} features, got {len(features)}")
    z = math.fsum(w * x for w, x in zip(model.weights, features)) + model.bias
    return _sigmoid(z)


def train(
    data: Sequence[tuple[Sequence[float], int]],
    *,
    learning_rate: float = 0.1,
    l2: float = 1e-3,
    epochs: int = 500,
    cue_phrases: Sequence[str] = DEFAULT_CUE_PHRASES,
) -> ScoringModel:
    return fit(
        data,
        learning_rate=learning_rate,
        l2=l2,
        epochs=epochs,
        cue_phrases=cue_phrases,
    ).model


def fit(
    data: Sequence[tuple[Sequence[float], int]],
    *,
    learning_rate: float = 0.1,
    l2: float = 1e-3,
    epochs: int = 500,
    cue_phrases: Sequence[str] = DEFAULT_CUE_PHRASES,
) -> TrainingRun:
    """Run exactly ``epochs`` full-batch steps from the zero model."""
    xs, ys = _validate_data(data)
    weights = [0.0] * FEATURE_COUNT
    bias = 0.0
    losses = [_objective(weights, bias, xs, ys, l2)]
    for _ in range(epochs):
        grad_w, grad_b = _gradient(weights, bias, xs, ys, l2)
        weights = [w - learning_rate * g for w, g in zip(weights, grad_w)]
        bias -= learning_rate * grad_b
        losses.append(_objective(weights, bias, xs, ys, l2))
    model = ScoringModel(
        weights=tuple(weights), bias=bias, cue_phrases=tuple(cue_phrases)
    )
    return TrainingRun(model=model, losses=losses)


def model_loss(model: ScoringModel, data: Sequence[tuple[Sequence[float], int]], l2: float = 1e-3) -> float:
    xs, ys = _validate_data(data)
    return _objective(list(model.weights), model.bias, xs, ys, l2)


def model_accuracy(model: ScoringModel, data: Sequence[tuple[Sequence[float], int]]) -> float:
    """Fraction classified correctly at the 0.5 threshold."""
    xs, ys = _validate_data(data)
    hits = sum(1 for x, y in zip(xs, ys) if (predict(model, x) >= 0.5) == (y == 1))
    return hits / len(xs)


def save_model(model: ScoringModel, destination: str | Path) -> None:
    payload = {
        "version": model.version,
        "weights": list(model.weights),
        "bias": model.bias,
        "cue_phrases": list(model.cue_phrases),
    }
    Path(destination).write_text(
        json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def load_model(source: str | Path) -> ScoringModel:
    """Decode a model file; weights round-trip bit-exactly through JSON."""
    try:
        raw = json.loads(Path(source).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelDecodeError(f"invalid model file {source}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ModelDecodeError(f"invalid model file {source}: expected an object")
    try:
        weights = tuple(float(w) for w in raw["weights"])
        bias = float(raw["bias"])
        cue_phrases = tuple(str(p) for p in raw.get("cue_phrases", ()))
        version = str(raw["version"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelDecodeError(f"invalid model file {source}: {exc!r}") from exc
    try:
        return ScoringModel(
            weights=weights, bias=bias, cue_phrases=cue_phrases, version=version
        )
    except ValidationError as exc:
        raise ModelDecodeError(f"invalid model file {source}: {exc}") from exc


def with_cue_phrases(model: ScoringModel, cue_phrases: Sequence[str]) -> ScoringModel:
    return replace(model, cue_phrases=tuple(cue_phrases))


def training_examples(
    parsed_cases: Mapping[str, ParsedJudgment],
    labels: Sequence[LabeledSentence],
    cue_phrases: Sequence[str] = DEFAULT_CUE_PHRASES,
) -> list[tuple[tuple[float, ...], int]]:
    """Turn labeled sentences into (features, label) pairs, in label order.

    Section contexts are built once per (case, section); a label that points
    outside its section's sentence range is rejected rather than dropped.
    """
    contexts: dict[tuple[str, SectionKind], SectionContext] = {}
    examples: list[tuple[tuple[float, ...], int]] = []
    for lab in labels:
        try:
            parsed = parsed_cases[lab.case_id]
        except KeyError:
            raise ValidationError(f"label references unknown case {lab.case_id!r}") from None
        key = (lab.case_id, lab.section)
        ctx = contexts.get(key)
        if ctx is None:
            section = parsed.section(lab.section)
            ctx = build_section_context(
                [s.text for s in section.sentences], section.heading_line
            )
            contexts[key] = ctx
        if not 0 <= lab.sentence_index < len(ctx.texts):
            raise ValidationError(
                f"label for case {lab.case_id!r} section {lab.section.label!r} "
                f"has sentence_index {lab.sentence_index} out of range "
                f"(section has {len(ctx.texts)} sentences)"
            )
        examples.append((extract_features(lab.sentence_index, ctx, cue_phrases), lab.label))
    return examples


def load_labeled_sentences(path: str | Path) -> list[LabeledSentence]:
    """One JSON object per line: {case_id, section, sentence_index, label}."""
    out: list[LabeledSentence] = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            label = int(raw["label"])
            if label not in (0, 1):
                raise ValueError(f"label must be 0 or 1, got {label}")
            out.append(
                LabeledSentence(
                    case_id=str(raw["case_id"]),
                    section=SectionKind.from_label(str(raw["section"])),
                    sentence_index=int(raw["sentence_index"]),
                    label=label,
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"{path}:{lineno}: bad labeled sentence: {exc}") from exc
    return out


# --- internals -------------------------------------------------------------


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def _softplus(z: float) -> float:
    # log(1 + e^z) without overflow
    if z > 0:
        return z + math.log1p(math.exp(-z))
    return math.log1p(math.exp(z))


def _validate_data(
    data: Sequence[tuple[Sequence[float], int]],
) -> tuple[list[tuple[float, ...]], list[int]]:
    if not data:
        raise ValidationError("training data is empty")
    xs: list[tuple[float, ...]] = []
    ys: list[int] = []
    for i, (x, y) in enumerate(data):
        if len(x) != FEATURE_COUNT:
            raise ValidationError(f"example {i}: expected {FEATURE_COUNT} features")
        if not all(math.isfinite(v) for v in x):
            raise ValidationError(f"example {i}: non-finite feature")
        if y not in (0, 1):
            raise ValidationError(f"example {i}: label must be 0 or 1, got {y!r}")
        xs.append(tuple(float(v) for v in x))
        ys.append(int(y))
    return xs, ys


def _margins(
    weights: list[float], bias: float, xs: list[tuple[float, ...]]
) -> list[float]:
    return [math.fsum(w * v for w, v in zip(weights, x)) + bias for x in xs]


def _gradient(
    weights: list[float],
    bias: float,
    xs: list[tuple[float, ...]],
    ys: list[int],
    l2: float,
) -> tuple[list[float], float]:
    """Mean log-loss gradient plus l2 * w; the bias is not regularized."""
    m = len(xs)
    errors = [_sigmoid(z) - y for z, y in zip(_margins(weights, bias, xs), ys)]
    grad_w = [
        math.fsum(e * x[k] for e, x in zip(errors, xs)) / m + l2 * weights[k]
        for k in range(FEATURE_COUNT)
    ]
    grad_b = math.fsum(errors) / m
    return grad_w, grad_b


def _objective(
    weights: list[float],
    bias: float,
    xs: list[tuple[float, ...]],
    ys: list[int],
    l2: float,
) -> float:
    m = len(xs)
    zs = _margins(weights, bias, xs)
    data_loss = math.fsum(
        _softplus(-z) if y == 1 else _softplus(z) for z, y in zip(zs, ys)
    )
    return data_loss / m + 0.5 * l2 * math.fsum(w * w for w in weights)
