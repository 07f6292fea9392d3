"""Extractive summarization of Vietnamese court judgments.

The pipeline: normalize raw text, split the judgment into its conventional
sections (content, assessment, decision), score sentences with an
unsupervised graph ranker or a trained logistic scorer, pick a redundancy-aware
subset per section, and join the survivors into a bullet summary.
"""

from .errors import (
    ConfigurationError,
    LexsummError,
    ModelDecodeError,
    NotFoundError,
    StorageError,
    ValidationError,
)
from .evaluation import EvalReport, RougeScore, evaluate_corpus, rouge_l, rouge_n
from .graph import (
    GraphMethod,
    SimilarityGraph,
    build_similarity_graph,
    cosine_similarity,
    overlap_similarity,
    tfidf_vectors,
)
from .ranking import RankingConfig, RankResult, power_iterate, rank_sentences
from .scorer import (
    LabeledSentence,
    ScoringModel,
    TrainingRun,
    extract_features,
    fit,
    load_labeled_sentences,
    load_model,
    predict,
    save_model,
    train,
    training_examples,
)
from .sections import (
    ParsedJudgment,
    Section,
    SectionKind,
    detect_headings,
    parse_judgment,
)
from .store import CaseDocument, CaseMetadata, CaseStore, QueryFilter, content_id
from .summarize import (
    CaseSummary,
    SectionSummary,
    SummaryConfig,
    SummaryMethod,
    allocate_budget,
    quality_score,
    select_best,
    select_bullets,
    summarize_document,
)
from .text import (
    AbbreviationTable,
    NormalizedText,
    Sentence,
    normalize_text,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "AbbreviationTable",
    "CaseDocument",
    "CaseMetadata",
    "CaseStore",
    "CaseSummary",
    "ConfigurationError",
    "EvalReport",
    "GraphMethod",
    "LabeledSentence",
    "LexsummError",
    "ModelDecodeError",
    "NormalizedText",
    "NotFoundError",
    "ParsedJudgment",
    "QueryFilter",
    "RankingConfig",
    "RankResult",
    "RougeScore",
    "ScoringModel",
    "Section",
    "SectionKind",
    "SectionSummary",
    "Sentence",
    "SimilarityGraph",
    "StorageError",
    "SummaryConfig",
    "SummaryMethod",
    "TrainingRun",
    "ValidationError",
    "allocate_budget",
    "build_similarity_graph",
    "content_id",
    "cosine_similarity",
    "detect_headings",
    "evaluate_corpus",
    "extract_features",
    "fit",
    "load_labeled_sentences",
    "load_model",
    "normalize_text",
    "overlap_similarity",
    "parse_judgment",
    "power_iterate",
    "predict",
    "quality_score",
    "rank_sentences",
    "rouge_l",
    "rouge_n",
    "save_model",
    "select_best",
    "select_bullets",
    "split_sentences",
    "summarize_document",
    "tfidf_vectors",
    "tokenize",
    "train",
    "training_examples",
]
