import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.errors import PreconditionViolated
from models.graph_model import (
    Color,
    Homogeneity,
    check_homogeneous,
    coloring_from_red_edges,
    complement,
    from_edges,
    vertices_to_mask,
)
from models.params_model import CaseLabel
from models.witness_model import CaseUsed, WitnessKind, verify_witness
from services import extractor
from services.bounds import es_upper_bound, min_edge_count, validate_params
from services.extractor import (
    es_extract,
    extract,
    extract_case1,
    extract_case2,
    extract_case3,
    greedy_clique,
    group_by_missing_subset,
    monochromatic_clique,
)
from services.generators import random_graph_exact_edges, random_unbalanced_coloring
from strategies import complete_graph, graphs


def _dense(n, k, seed):
    return random_graph_exact_edges(n, min_edge_count(n, k), seed)


def test_es_extract_complete_graph(k6):
    w = es_extract(k6, 3, 3)
    assert w.kind is WitnessKind.CLIQUE
    assert w.vertices == (0, 1, 2)
    assert w.case_used is CaseUsed.TRIVIAL


def test_es_extract_empty_graph():
    w = es_extract(from_edges(6, []), 3, 3)
    assert w.kind is WitnessKind.INDEPENDENT_SET
    assert w.size == 3


def test_es_extract_k6_minus_matching(k6_minus_matching):
    w = es_extract(k6_minus_matching, 3, 3)
    assert w.kind is WitnessKind.CLIQUE
    assert w.vertices == (0, 2, 4)
    assert check_homogeneous(k6_minus_matching, w.vertices) is Homogeneity.CLIQUE


def test_es_extract_needs_enough_vertices(k5):
    with pytest.raises(PreconditionViolated):
        es_extract(k5, 3, 3)
    with pytest.raises(PreconditionViolated):
        es_extract(k5, 0, 3)


@settings(max_examples=300)
@given(graphs(min_n=1, max_n=8), st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=5))
def test_es_extract_is_total(g, s, t):
    if es_upper_bound(s, t) > g.n:
        return
    w = es_extract(g, s, t)
    if w.kind is WitnessKind.CLIQUE:
        assert w.size == s
        assert check_homogeneous(g, w.vertices) in (Homogeneity.CLIQUE, Homogeneity.BOTH)
    else:
        assert w.size == t
        assert check_homogeneous(g, w.vertices) in (Homogeneity.INDEPENDENT_SET, Homogeneity.BOTH)


def test_greedy_clique_small(k5, c5):
    assert greedy_clique(k5) == [0, 1, 2, 3, 4]
    assert greedy_clique(c5) == [0, 1]
    assert greedy_clique(k5, stop_at=2) == [0, 1]
    assert greedy_clique(k5, within=vertices_to_mask([2, 4])) == [2, 4]


@given(graphs(min_n=1, max_n=10))
def test_greedy_clique_is_clique_meeting_caro_wei(g):
    clique = greedy_clique(g)
    assert check_homogeneous(g, clique) in (Homogeneity.CLIQUE, Homogeneity.BOTH)
    average_non_degree = 2 * (g.pair_count - g.edge_count) / g.n
    assert len(clique) >= g.n / (average_non_degree + 1) - 1e-9


def test_group_by_missing_subset():
    # A = {0, 1, 2}; 3 and 4 miss vertex 2, 5 only sees 0.
    edges = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4), (0, 5)]
    h = from_edges(6, edges)
    assert group_by_missing_subset(h, [0, 1, 2], 20) == {(2,): [3, 4]}


def test_group_by_missing_subset_zero_threshold():
    # k = 10 puts the neighbour threshold at 0
    edges = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (1, 4), (2, 4)]
    h = from_edges(5, edges)
    assert group_by_missing_subset(h, [0, 1, 2], 10) == {(): [3], (0,): [4]}


def test_group_by_missing_subset_single_group(k5):
    assert group_by_missing_subset(k5, [0, 1], 20) == {(): [2, 3, 4]}


def test_group_by_missing_subset_planted_classes():
    a = range(10)
    missing = {b: {0} for b in range(10, 25)}
    missing.update({b: {1, 2} for b in range(25, 35)})
    missing.update({b: set(range(1, 10)) for b in range(35, 40)})
    edges = list(itertools.combinations(a, 2))
    edges += [(u, b) for b, gone in missing.items() for u in a if u not in gone]
    groups = group_by_missing_subset(from_edges(40, edges), list(a), 20)
    assert groups == {(0,): list(range(10, 25)), (1, 2): list(range(25, 35))}


def test_group_by_missing_subset_needs_clique(c5):
    with pytest.raises(PreconditionViolated):
        group_by_missing_subset(c5, [0, 1, 2], 20)


def test_extract_trivial_target(k5):
    w, trace = extract(k5, validate_params(5, 2, 0.01))
    assert (w.kind, w.vertices, w.case_used) == (WitnessKind.CLIQUE, (0,), CaseUsed.TRIVIAL)
    assert trace.case_used is CaseLabel.CASE1


def test_extract_case1_reaches_two():
    g = _dense(200, 100, seed=11)
    p = validate_params(200, 100, 0.01)
    w, trace = extract(g, p)
    assert w.case_used is CaseUsed.CASE1
    assert w.size == 2
    assert trace.es_calls >= 2
    assert verify_witness(g, w, p)


def test_extract_case2_complete_graph():
    g = complete_graph(200)
    p = validate_params(200, 150, 0.01)
    w, trace = extract(g, p)
    assert w.kind is WitnessKind.CLIQUE
    assert w.case_used is CaseUsed.CASE2
    assert w.size >= 2
    assert not trace.fallback_used
    assert all(check.holds for check in trace.assertions_checked if check.hard)


def test_extract_case2_falls_back_to_exact_search(monkeypatch):
    g = _dense(200, 150, seed=3)
    p = validate_params(200, 150, 0.01)
    monkeypatch.setattr(extractor, "greedy_clique", lambda *args, **kwargs: [0])
    w, trace = extract_case2(g, p)
    assert trace.fallback_used
    assert trace.greedy_size == 1
    assert w.size >= 2
    assert verify_witness(g, w, p)


def test_case_handlers_check_their_range():
    with pytest.raises(PreconditionViolated):
        extract_case2(complete_graph(200), validate_params(200, 10, 0.01))
    with pytest.raises(PreconditionViolated):
        extract_case1(complete_graph(200), validate_params(200, 150, 0.01))


def test_extract_rejects_sparse_graph(c5):
    with pytest.raises(PreconditionViolated):
        extract(c5, validate_params(5, 3, 0.01))


@pytest.fixture(scope="module")
def case3_complete():
    # case 3 needs 100 < k < sqrt(n)
    return complement(from_edges(10201, [])), validate_params(10201, 100.5, 0.01)


def test_extract_case3_rejects_bad_initial_clique(case3_complete):
    g, p = case3_complete
    with pytest.raises(PreconditionViolated):
        extract_case3(g, p, initial_clique=[])
    with pytest.raises(PreconditionViolated):
        extract_case3(g, p, initial_clique=[10201])


def test_extract_case3_grows_a_single_vertex(case3_complete):
    g, p = case3_complete
    w, trace = extract_case3(g, p, initial_clique=[0])
    assert trace.clique_history == [(0, 1), (1, 2), (2, 3)]
    assert trace.w_removed == ()
    assert w.kind is WitnessKind.CLIQUE
    assert w.size == 3
    assert all(check.holds for check in trace.assertions_checked if check.hard)
    assert verify_witness(g, w, p)


def test_extract_case3_stops_when_greedy_reaches_target(case3_complete):
    g, p = case3_complete
    w, trace = extract_case3(g, p)
    assert trace.clique_history == [(0, 3)]
    assert trace.greedy_size == 3
    assert trace.es_calls == 0
    assert w.vertices == (0, 1, 2)


def test_extract_case3_rejects_sparse_graph():
    with pytest.raises(PreconditionViolated):
        extract_case3(from_edges(10201, []), validate_params(10201, 100.5, 0.01))


def test_monochromatic_clique_on_unbalanced_coloring():
    c = random_unbalanced_coloring(10, Fraction(1, 4), seed=1)
    result, trace = monochromatic_clique(c, Fraction(1, 4), 0.01)
    assert result.color is Color.RED
    assert result.vertices == (0,)
    assert trace.case_used is CaseLabel.CASE1


def test_monochromatic_clique_needs_unbalanced_coloring():
    c = coloring_from_red_edges(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(PreconditionViolated):
        monochromatic_clique(c, Fraction(1, 4), 0.01)
