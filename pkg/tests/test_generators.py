import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from models.errors import BudgetExceeded, InvalidInput, PreconditionViolated
from models.graph_model import is_eps_balanced, min_color_edges, to_networkx
from services import generators
from services.generators import (
    GenKind,
    GenSpec,
    decode_pair_indices,
    generate,
    make_rng,
    random_graph_exact_edges,
    random_unbalanced_coloring,
    tightness_search,
    turan_graph,
    turan_part_sizes,
)
from services.oracle import hom_number, max_clique_exact


@given(st.integers(min_value=2, max_value=60))
def test_decode_pair_indices_is_lexicographic(n):
    total = n * (n - 1) // 2
    u, v = decode_pair_indices(range(total), n)
    assert list(zip(u.tolist(), v.tolist())) == list(itertools.combinations(range(n), 2))


@pytest.mark.parametrize("m", [0, 1, 100, 217, 218, 400, 435])
def test_random_graph_has_exact_edge_count(m):
    g = random_graph_exact_edges(30, m, seed=5)
    assert g.edge_count == m
    assert len(list(g.edges())) == m


def test_random_graph_is_seeded():
    assert random_graph_exact_edges(40, 300, seed=9) == random_graph_exact_edges(40, 300, seed=9)
    assert random_graph_exact_edges(40, 300, seed=9) != random_graph_exact_edges(40, 300, seed=10)


@pytest.mark.parametrize("m", [-1, 436])
def test_random_graph_rejects_impossible_count(m):
    with pytest.raises(InvalidInput):
        random_graph_exact_edges(30, m, seed=0)


def test_make_rng_rejects_out_of_range_seed():
    with pytest.raises(InvalidInput):
        make_rng(-1)
    with pytest.raises(InvalidInput):
        make_rng(1 << 64)


def test_turan_graph_matches_networkx():
    g = turan_graph(10, 3)
    assert turan_part_sizes(10, 3) == [4, 3, 3]
    assert g.edge_count == 45 - (6 + 3 + 3)
    assert max_clique_exact(g).best_size == 3
    assert nx.is_isomorphic(to_networkx(g), nx.turan_graph(10, 3))


@pytest.mark.parametrize("r", [0, 11])
def test_turan_graph_rejects_bad_r(r):
    with pytest.raises(InvalidInput):
        turan_graph(10, r)


@pytest.mark.parametrize("eps", [Fraction(1, 4), 0.25, Fraction(1, 10)])
def test_unbalanced_coloring_just_misses_eps(eps):
    c = random_unbalanced_coloring(20, eps, seed=3)
    assert c.blue_count == min_color_edges(eps, 190) - 1
    assert not is_eps_balanced(c, eps)


def test_unbalanced_coloring_rejects_bad_input():
    with pytest.raises(InvalidInput):
        random_unbalanced_coloring(1, Fraction(1, 4), seed=0)
    with pytest.raises(InvalidInput):
        random_unbalanced_coloring(10, Fraction(3, 4), seed=0)


def test_tightness_search_never_worsens():
    start = random_graph_exact_edges(10, 30, seed=2)
    best, best_hom = tightness_search(start, 30, iterations=40, seed=2)
    assert best.edge_count >= 30
    assert best_hom <= hom_number(start)
    assert best_hom == hom_number(best)


def test_tightness_search_is_seeded():
    start = random_graph_exact_edges(9, 25, seed=4)
    assert tightness_search(start, 25, 20, seed=4) == tightness_search(start, 25, 20, seed=4)


def test_tightness_search_preconditions():
    with pytest.raises(InvalidInput):
        tightness_search(random_graph_exact_edges(41, 10, seed=0), 0, 1, seed=0)
    with pytest.raises(PreconditionViolated):
        tightness_search(random_graph_exact_edges(10, 20, seed=0), 21, 1, seed=0)


def test_generate_dispatches():
    assert generate(GenSpec(GenKind.TURAN_GRAPH, 6, r=2)) == turan_graph(6, 2)
    assert generate(GenSpec(GenKind.RANDOM_EXACT, 12, seed=1, m=20)) == random_graph_exact_edges(12, 20, 1)
    coloring = generate(GenSpec("unbalanced_coloring", 8, seed=1, eps=Fraction(1, 4)))
    assert coloring.n == 8
    graph, hom = generate(GenSpec(GenKind.TIGHTNESS_SEARCH, 8, seed=1, m=20, iterations=5))
    assert graph.edge_count >= 20
    assert hom == hom_number(graph)


def test_tightness_search_frozen_complete_graph():
    k10 = turan_graph(10, 10)
    best, best_hom = tightness_search(k10, 45, iterations=20, seed=0)
    assert best == k10
    assert best_hom == 10


def test_tightness_search_without_iterations_scores_start():
    start = turan_graph(20, 4)
    assert tightness_search(start, start.edge_count, iterations=0, seed=0) == (start, 5)


def test_tightness_search_budget_on_start_keeps_start(monkeypatch):
    def out_of_time(*args, **kwargs):
        raise BudgetExceeded("out of time")

    start = random_graph_exact_edges(8, 20, seed=1)
    monkeypatch.setattr(generators, "hom_number", out_of_time)
    with pytest.raises(BudgetExceeded) as info:
        tightness_search(start, 20, iterations=5, seed=1)
    assert info.value.best == (start, None)
