"""Sentence similarity measures and the weighted graph built from them.

Two similarity families are supported: unique-token overlap normalized by
log sentence lengths (the classic TextRank measure) and tf-isf cosine (the
LexRank measure). Graphs are undirected, per section, and store only edges
strictly above the configured threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from collections.abc import Sequence


class GraphMethod(enum.Enum):
    OVERLAP = "overlap"
    TFIDF_COSINE = "tfidf_cosine"


@dataclass(frozen=True)
class SimilarityGraph:
    """Undirected weighted graph over the sentences of one section.

    ``weights`` keys are (i, j) with i < j; all stored weights are strictly
    greater than ``threshold``.
    """

    n: int
    weights: dict[tuple[int, int], float]
    method: GraphMethod
    threshold: float

    def weight(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        key = (i, j) if i < j else (j, i)
        return self.weights.get(key, 0.0)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Neighbor lists, ordered by neighbor index."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (i, j), w in sorted(self.weights.items()):
            adj[i].append((j, w))
            adj[j].append((i, w))
        for neighbors in adj:
            neighbors.sort()
        return adj


def overlap_similarity(a: Sequence[str], b: Sequence[str]) -> float:
    """|shared unique tokens| / (ln|a| + ln|b|); 0 when the denominator is."""
    if not a or not b:
        return 0.0
    denom = math.log(len(a)) + math.log(len(b))
    if denom <= 0.0:
        return 0.0
    return len(set(a) & set(b)) / denom


def tfidf_vectors(sentences: Sequence[Sequence[str]]) -> list[dict[str, float]]:
    """Per-sentence sparse tf-isf vectors.

    idf(t) = ln((1+N)/(1+df)) + 1 over the N sentences given, so even a
    token present everywhere keeps a positive weight.
    """
    n = len(sentences)
    df: dict[str, int] = {}
    for tokens in sentences:
        for token in set(tokens):
            df[token] = df.get(token, 0) + 1

    idf = {t: math.log((1 + n) / (1 + c)) + 1.0 for t, c in df.items()}

    vectors: list[dict[str, float]] = []
    for tokens in sentences:
        tf: dict[str, int] = {}
        for token in tokens:
            tf[token] = tf.get(token, 0) + 1
        vectors.append({t: count * idf[t] for t, count in tf.items()})
    return vectors


def cosine_similarity(u: dict[str, float], v: dict[str, float]) -> float:
    """Sparse cosine; 0 when either vector has zero norm."""
    if not u or not v:
        return 0.0
    if len(v) < len(u):
        u, v = v, u
    dot = sum(w * v[t] for t, w in u.items() if t in v)
    norm_u = math.sqrt(sum(w * w for w in u.values()))
    norm_v = math.sqrt(sum(w * w for w in v.values()))
    if norm_u == 0.0 or norm_v == 0.0:
        return 0.0
    return dot / (norm_u * norm_v)


def build_similarity_graph(
    sentences: Sequence[Sequence[str]],
    method: GraphMethod,
    threshold: float = 0.0,
) -> SimilarityGraph:
    """Evaluate every unordered sentence pair; keep edges above threshold."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    n = len(sentences)
    if method is GraphMethod.TFIDF_COSINE:
        vectors = tfidf_vectors(sentences)

        def sim(i: int, j: int) -> float:
            return cosine_similarity(vectors[i], vectors[j])

    else:

        def sim(i: int, j: int) -> float:
            return overlap_similarity(sentences[i], sentences[j])

    weights: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = sim(i, j)
            if w > threshold:
                weights[(i, j)] = w
    return SimilarityGraph(n=n, weights=weights, method=method, threshold=threshold)
