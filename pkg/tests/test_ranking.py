import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexsumm.graph import GraphMethod, SimilarityGraph
from lexsumm.ranking import RankResult, RankingConfig, power_iterate, rank_sentences


def graph(n, weights, threshold=0.0):
    return SimilarityGraph(
        n=n, weights=weights, method=GraphMethod.OVERLAP, threshold=threshold
    )


# ---------------------------------------------------------------------------
# config validation
# ---------------------------------------------------------------------------


def test_default_config():
    cfg = RankingConfig()
    assert cfg.damping == 0.85
    assert cfg.eps == 1e-6
    assert cfg.max_iter == 100


@pytest.mark.parametrize(
    "kwargs",
    [
        {"damping": 0.0},
        {"damping": 1.0},
        {"damping": -0.2},
        {"eps": 0.0},
        {"eps": -1e-9},
        {"max_iter": 0},
    ],
)
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        RankingConfig(**kwargs)


# ---------------------------------------------------------------------------
# fixed-point iteration
# ---------------------------------------------------------------------------


def test_empty_graph():
    result = power_iterate(graph(0, {}))
    assert result == RankResult(scores=[], iterations=0, converged=True, residual=0.0)


def test_single_isolated_vertex():
    result = power_iterate(graph(1, {}))
    assert result.converged
    assert result.scores == [1.0 - 0.85]


def test_isolated_vertices_settle_at_base():
    result = power_iterate(graph(3, {}))
    assert result.scores == [1.0 - 0.85] * 3
    assert result.converged
    # second iteration sees no change at all
    assert result.residual == 0.0


def test_symmetric_pair_is_exactly_one():
    result = power_iterate(graph(2, {(0, 1): 0.7}))
    assert result.converged
    assert result.scores == [1.0, 1.0]
    assert result.residual == 0.0


def test_three_vertex_path_closed_form():
    # A-B and B-C with unit weights; closed form gives
    # S_A = S_C = 0.7702702702702703 and S_B = 1.4594594594594594
    result = power_iterate(graph(3, {(0, 1): 1.0, (1, 2): 1.0}))
    assert result.converged
    assert result.scores[0] == pytest.approx(0.7702702702702703, abs=1e-4)
    assert result.scores[2] == pytest.approx(0.7702702702702703, abs=1e-4)
    assert result.scores[1] == pytest.approx(1.4594594594594594, abs=1e-4)
    assert result.scores[0] == result.scores[2]


def test_edge_weights_matter_only_relatively_per_vertex():
    # scaling every weight by a constant leaves w/deg ratios unchanged
    base = power_iterate(graph(3, {(0, 1): 0.2, (1, 2): 0.6}))
    scaled = power_iterate(graph(3, {(0, 1): 0.4, (1, 2): 1.2}))
    assert scaled.scores == base.scores
    assert scaled.iterations == base.iterations


@pytest.mark.parametrize("factor", [0.5, 2.0, 4.0])
def test_scale_invariance_exact_for_power_of_two(factor):
    weights = {(0, 1): 0.3, (0, 2): 0.1, (1, 3): 0.8, (2, 3): 0.5}
    base = power_iterate(graph(4, weights))
    scaled = power_iterate(graph(4, {k: w * factor for k, w in weights.items()}))
    assert scaled.scores == base.scores


def test_scale_invariance_approximate_for_odd_factor():
    weights = {(0, 1): 0.3, (0, 2): 0.1, (1, 3): 0.8, (2, 3): 0.5}
    base = power_iterate(graph(4, weights))
    scaled = power_iterate(graph(4, {k: w * 3.7 for k, w in weights.items()}))
    for a, b in zip(base.scores, scaled.scores):
        assert a == pytest.approx(b, abs=1e-9)


def test_repeat_runs_are_bitwise_identical():
    weights = {(0, 1): 0.31, (1, 2): 0.17, (0, 3): 0.55, (2, 3): 0.44}
    first = power_iterate(graph(4, weights))
    second = power_iterate(graph(4, weights))
    assert first.scores == second.scores
    assert first.iterations == second.iterations
    assert first.residual == second.residual


def test_vertex_transitive_graph_is_uniform():
    # a 4-cycle with equal weights: every vertex sees the same neighborhood
    cycle = {(0, 1): 0.5, (1, 2): 0.5, (2, 3): 0.5, (0, 3): 0.5}
    result = power_iterate(graph(4, cycle))
    assert result.scores == [1.0] * 4
    assert result.converged


def test_non_convergence_is_reported_not_raised():
    weights = {(0, 1): 1.0, (1, 2): 1.0, (2, 3): 1.0, (3, 4): 1.0}
    result = power_iterate(graph(5, weights), RankingConfig(max_iter=3))
    assert not result.converged
    assert result.iterations == 3
    assert result.residual >= 1e-6
    assert len(result.scores) == 5
    assert all(math.isfinite(s) for s in result.scores)


def test_iteration_count_is_positive_when_work_done():
    # starting from all-ones, the symmetric pair maps onto itself at once
    result = power_iterate(graph(2, {(0, 1): 1.0}))
    assert result.iterations == 1


def test_tighter_eps_takes_more_iterations():
    # per-step contraction is roughly the damping factor, so 1e-10 needs
    # well over the default 100 iterations
    weights = {(0, 1): 1.0, (1, 2): 1.0}
    loose = power_iterate(graph(3, weights), RankingConfig(eps=1e-3))
    tight = power_iterate(graph(3, weights), RankingConfig(eps=1e-10, max_iter=500))
    assert tight.iterations > loose.iterations
    assert tight.converged
    assert tight.residual < 1e-10


def _apply_once(g, scores, damping=0.85):
    """Independent restatement of the score update, for oracle use."""
    adj = g.adjacency()
    degree = [sum(w for _, w in neighbors) for neighbors in adj]
    return [
        (1.0 - damping)
        + damping * sum(w / degree[j] * scores[j] for j, w in adj[i])
        for i in range(g.n)
    ]


_WEIGHTS = st.dictionaries(
    st.tuples(st.integers(0, 5), st.integers(0, 5)).map(lambda t: (min(t), max(t))).filter(
        lambda t: t[0] < t[1]
    ),
    st.floats(min_value=1e-3, max_value=1.0, allow_nan=False),
    max_size=10,
)


@settings(max_examples=100, deadline=None)
@given(_WEIGHTS)
def test_converged_scores_are_fixed_points(weights):
    g = graph(6, weights)
    result = power_iterate(g)
    assert result.converged
    replayed = _apply_once(g, result.scores)
    for before, after in zip(result.scores, replayed):
        assert abs(before - after) < 1e-6


@settings(max_examples=100, deadline=None)
@given(_WEIGHTS)
def test_score_bounds(weights):
    g = graph(6, weights)
    result = power_iterate(g)
    for i, s in enumerate(result.scores):
        assert s >= 1.0 - 0.85 - 1e-12
        if not g.adjacency()[i]:
            assert s == 1.0 - 0.85


# ---------------------------------------------------------------------------
# ordering
# ---------------------------------------------------------------------------


def test_rank_sentences_path_graph():
    g = graph(3, {(0, 1): 1.0, (1, 2): 1.0})
    assert rank_sentences(g) == [1, 0, 2]


def test_rank_breaks_ties_by_index():
    g = graph(4, {})
    assert rank_sentences(g) == [0, 1, 2, 3]


def test_rank_is_permutation():
    g = graph(5, {(0, 1): 0.9, (2, 3): 0.2, (1, 4): 0.4})
    order = rank_sentences(g)
    assert sorted(order) == list(range(5))
    scores = power_iterate(g).scores
    ranked = [scores[i] for i in order]
    assert ranked == sorted(ranked, reverse=True)
