"""Damped fixed-point ranking of sentences over a similarity graph.

The update is the weighted PageRank recurrence

    S_i <- (1 - d) + d * sum_{j in N(i)} w_ij / deg(j) * S_j

with deg(j) the total edge weight at j and all scores initialized to 1.
Updates are synchronous (Jacobi style), so results do not depend on vertex
order and repeated runs are bitwise identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import SimilarityGraph


@dataclass(frozen=True)
class RankingConfig:
    damping: float = 0.85
    eps: float = 1e-6
    max_iter: int = 100

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class RankResult:
    scores: list[float]
    iterations: int
    converged: bool
    residual: float


def power_iterate(graph: SimilarityGraph, cfg: RankingConfig | None = None) -> RankResult:
    """Iterate until the max absolute score change drops below ``cfg.eps``.

    Isolated vertices settle at exactly (1 - damping). Hitting ``max_iter``
    without converging is reported, not raised; the last iterate is returned.
    """
    if cfg is None:
        cfg = RankingConfig()
    n = graph.n
    if n == 0:
        return RankResult(scores=[], iterations=0, converged=True, residual=0.0)

    adj = graph.adjacency()
    degree = [sum(w for _, w in neighbors) for neighbors in adj]
    base = 1.0 - cfg.damping

    scores = [1.0] * n
    iterations = 0
    residual = 0.0
    converged = False
    while iterations < cfg.max_iter:
        new_scores = [
            base
            + cfg.damping
            * sum(w / degree[j] * scores[j] for j, w in adj[i])
            for i in range(n)
        ]
        iterations += 1
        residual = max(abs(a - b) for a, b in zip(new_scores, scores))
        scores = new_scores
        if residual < cfg.eps:
            converged = True
            break
    return RankResult(
        scores=scores, iterations=iterations, converged=converged, residual=residual
    )


def rank_sentences(graph: SimilarityGraph, cfg: RankingConfig | None = None) -> list[int]:
    """Vertex indices by descending score; ties go to the earlier sentence."""
    result = power_iterate(graph, cfg)
    return sorted(range(graph.n), key=lambda i: (-result.scores[i], i))
