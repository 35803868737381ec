"""Seeded instance generators.

All randomness comes from numpy's PCG64 bit generator seeded with the
caller's 64-bit seed, so a (GenSpec, seed) pair always maps to the same graph.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from config import TIGHTNESS_MAX_N, TIGHTNESS_SIDEWAYS_LIMIT
from models.errors import BudgetExceeded, InvalidInput, PreconditionViolated
from models.graph_model import (
    TwoColoring,
    complement,
    graph_from_pairs,
    graph_from_rows,
    min_color_edges,
    toggle_edge,
    validate_eps,
)
from services.oracle import hom_number
from utils.log_utils import get_logger

logger = get_logger("generators")


class GenKind(str, Enum):
    RANDOM_EXACT = "random_exact"
    TURAN_GRAPH = "turan_graph"
    UNBALANCED_COLORING = "unbalanced_coloring"
    TIGHTNESS_SEARCH = "tightness_search"


@dataclass(frozen=True)
class GenSpec:
    kind: GenKind
    n: int
    seed: int = 0
    m: int = None
    eps: object = None
    r: int = None
    iterations: int = 0


def make_rng(seed):
    if seed < 0 or seed >= 1 << 64:
        raise InvalidInput(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def decode_pair_indices(indices, n):
    """Map lexicographic pair indices in [0, C(n, 2)) to endpoint arrays ``(u, v)``, u < v."""
    idx = np.asarray(indices, dtype=np.int64)
    b = 2 * n - 1

    def offset(u):
        return u * (2 * n - u - 1) // 2

    u = np.floor((b - np.sqrt(float(b) * b - 8.0 * idx)) / 2).astype(np.int64)
    u = np.clip(u, 0, max(n - 2, 0))
    u = np.where(offset(u + 1) <= idx, u + 1, u)
    u = np.where(offset(u) > idx, u - 1, u)
    v = idx - offset(u) + u + 1
    return u, v


def _sample_pairs(n, count, rng):
    total = n * (n - 1) // 2
    if count == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    picks = np.sort(rng.choice(total, size=count, replace=False))
    return decode_pair_indices(picks, n)


def random_graph_exact_edges(n, m, seed):
    """Uniform graph with exactly ``m`` edges.

    Above half density the non-edges are sampled instead and the result is
    complemented.
    """
    total = n * (n - 1) // 2
    if n < 0 or not 0 <= m <= total:
        raise InvalidInput(f"edge count {m} outside [0, {total}] for n={n}")
    rng = make_rng(seed)
    dense = m > total / 2
    us, vs = _sample_pairs(n, total - m if dense else m, rng)
    g = graph_from_pairs(n, us, vs)
    return complement(g) if dense else g


def turan_part_sizes(n, r):
    base, extra = divmod(n, r)
    return [base + 1] * extra + [base] * (r - extra)


def turan_graph(n, r):
    """Complete r-partite graph with balanced parts of consecutive vertices."""
    if not 1 <= r <= n:
        raise InvalidInput(f"Turán graph needs 1 <= r <= n, got n={n}, r={r}")
    full = (1 << n) - 1
    rows = []
    start = 0
    for size in turan_part_sizes(n, r):
        part = ((1 << size) - 1) << start
        rows.extend([full ^ part] * size)
        start += size
    return graph_from_rows(n, rows)


def random_unbalanced_coloring(n, eps, seed):
    """Coloring whose blue class falls one edge short of an ``eps``-fraction."""
    if n < 2:
        raise InvalidInput(f"coloring needs n >= 2, got {n}")
    validate_eps(eps)
    total = n * (n - 1) // 2
    minority = max(0, min_color_edges(eps, total) - 1)
    us, vs = _sample_pairs(n, minority, make_rng(seed))
    blue = graph_from_pairs(n, us, vs)
    return TwoColoring(n=n, red=complement(blue))


def _random_move(g, min_edges, rng):
    edges = list(g.edges())
    non_edges = list(complement(g).edges())
    moves = []
    if non_edges:
        moves.append("insert")
    if edges and g.edge_count - 1 >= min_edges:
        moves.append("delete")
    if edges and non_edges:
        moves.append("swap")
    if not moves:
        return None
    move = moves[int(rng.integers(len(moves)))]
    if move in ("delete", "swap"):
        g = toggle_edge(g, *edges[int(rng.integers(len(edges)))])
    if move in ("insert", "swap"):
        g = toggle_edge(g, *non_edges[int(rng.integers(len(non_edges)))])
    return g


def tightness_search(start, min_edges, iterations, seed, budget_secs=None):
    """Hill-climb on edge insert/delete/swap moves to shrink max(clique, independent set).

    Edge count never drops below ``min_edges``. Sideways moves are accepted
    while fewer than ``TIGHTNESS_SIDEWAYS_LIMIT`` consecutive steps have failed to improve.
    Returns ``(best_graph, best_hom)``.
    """
    if start.n > TIGHTNESS_MAX_N:
        raise InvalidInput(f"tightness search is limited to n <= {TIGHTNESS_MAX_N}, got {start.n}")
    if start.edge_count < min_edges:
        raise PreconditionViolated(f"start has {start.edge_count} edges, below the floor {min_edges}")
    rng = make_rng(seed)
    current = start
    try:
        current_hom = hom_number(start, budget_secs)
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), best=(start, None)) from exc
    best, best_hom = current, current_hom
    stalled = 0
    for step in range(iterations):
        candidate = _random_move(current, min_edges, rng)
        if candidate is None:
            logger.debug("no legal move from the current graph; stopping at step %d", step)
            break
        try:
            candidate_hom = hom_number(candidate, budget_secs)
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), best=(best, best_hom)) from exc
        if candidate_hom < current_hom:
            current, current_hom, stalled = candidate, candidate_hom, 0
        else:
            stalled += 1
            if candidate_hom == current_hom and stalled <= TIGHTNESS_SIDEWAYS_LIMIT:
                current = candidate
        if current_hom < best_hom:
            best, best_hom = current, current_hom
    return best, best_hom


def generate(spec):
    """Dispatch a GenSpec. TightnessSearch starts from a random graph with ``m`` edges."""
    kind = GenKind(spec.kind)
    if kind is GenKind.RANDOM_EXACT:
        return random_graph_exact_edges(spec.n, spec.m, spec.seed)
    if kind is GenKind.TURAN_GRAPH:
        return turan_graph(spec.n, spec.r)
    if kind is GenKind.UNBALANCED_COLORING:
        return random_unbalanced_coloring(spec.n, spec.eps, spec.seed)
    start = random_graph_exact_edges(spec.n, spec.m, spec.seed)
    return tightness_search(start, spec.m, spec.iterations, spec.seed)
