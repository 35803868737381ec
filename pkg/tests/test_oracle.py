import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from models.errors import BudgetExceeded, InvalidInput
from models.graph_model import Homogeneity, check_homogeneous, complement, to_networkx
from services.generators import random_graph_exact_edges
from services.oracle import (
    hom_number,
    max_clique_cpsat,
    max_clique_exact,
    max_independent_set_exact,
    ramsey_check,
)
from strategies import graphs


def _brute_force_clique_number(g):
    for size in range(g.n, 0, -1):
        for subset in itertools.combinations(range(g.n), size):
            if check_homogeneous(g, subset) in (Homogeneity.CLIQUE, Homogeneity.BOTH):
                return size
    return 0


def test_complete_and_cycle(k5, c5):
    result = max_clique_exact(k5)
    assert (result.best_size, result.witness, result.exhausted) == (5, (0, 1, 2, 3, 4), True)
    assert max_clique_exact(c5).best_size == 2
    assert max_independent_set_exact(c5).best_size == 2
    assert hom_number(c5) == 2


def test_empty_graph():
    from models.graph_model import from_edges

    result = max_clique_exact(from_edges(0, []))
    assert (result.best_size, result.witness, result.exhausted) == (0, (), True)


def test_stop_at_exits_early(k6):
    result = max_clique_exact(k6, stop_at=3)
    assert result.best_size >= 3
    assert not result.exhausted
    assert check_homogeneous(k6, result.witness) is Homogeneity.CLIQUE


def test_stop_at_above_clique_number_is_exhaustive(c5):
    result = max_clique_exact(c5, stop_at=3)
    assert result.best_size == 2
    assert result.exhausted


@settings(max_examples=200)
@given(graphs(min_n=1, max_n=7))
def test_clique_number_matches_subset_enumeration(g):
    result = max_clique_exact(g)
    assert result.best_size == _brute_force_clique_number(g)
    assert check_homogeneous(g, result.witness) in (Homogeneity.CLIQUE, Homogeneity.BOTH)


@given(graphs(min_n=1, max_n=12))
def test_clique_number_matches_networkx(g):
    expected = max(len(clique) for clique in nx.find_cliques(to_networkx(g)))
    assert max_clique_exact(g).best_size == expected


@given(graphs(max_n=10))
def test_independent_set_is_clique_of_complement(g):
    assert max_independent_set_exact(g) == max_clique_exact(complement(g))


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_cpsat_agrees_with_branch_and_bound(seed):
    g = random_graph_exact_edges(25, 200, seed)
    exact = max_clique_exact(g)
    cpsat = max_clique_cpsat(g, time_limit=20)
    assert cpsat.exhausted
    assert cpsat.best_size == exact.best_size
    assert check_homogeneous(g, cpsat.witness) is Homogeneity.CLIQUE


def test_budget_exceeded_carries_best_so_far():
    g = random_graph_exact_edges(120, 3570, seed=7)
    with pytest.raises(BudgetExceeded) as info:
        max_clique_exact(g, budget_secs=0)
    best = info.value.best
    assert not best.exhausted
    assert check_homogeneous(g, best.witness) in (Homogeneity.CLIQUE, Homogeneity.BOTH)


def test_ramsey_five_vertices_has_counterexample():
    result = ramsey_check(5, 3, 3)
    assert not result.holds
    assert max_clique_exact(result.counterexample).best_size == 2
    assert max_independent_set_exact(result.counterexample).best_size == 2


def test_ramsey_trivial_sizes():
    assert ramsey_check(4, 1, 5).holds
    assert ramsey_check(3, 2, 2).holds
    assert not ramsey_check(1, 2, 2).holds


def test_ramsey_budget_and_arguments():
    with pytest.raises(BudgetExceeded):
        ramsey_check(8, 3, 3)
    with pytest.raises(InvalidInput):
        ramsey_check(5, 0, 3)
