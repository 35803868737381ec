"""Exact ground truth: branch-and-bound max clique, max independent set, Ramsey checks.

The branch and bound works on bit rows relabelled by descending degree
(ties by index) and prunes with greedy coloring bounds. A CP-SAT model is
kept as an independent second oracle.
"""
import itertools
import time
from dataclasses import dataclass

import numpy as np
from ortools.sat.python import cp_model

from config import ORACLE_BUDGET_SECS, RAMSEY_MAX_PAIRS
from models.errors import BudgetExceeded, InvalidInput
from models.graph_model import complement, from_edges, relabel
from utils.log_utils import get_logger

logger = get_logger("oracle")

_CLOCK_CHECK_EVERY = 256


@dataclass(frozen=True)
class OracleResult:
    best_size: int
    witness: tuple
    exhausted: bool
    nodes_explored: int


@dataclass(frozen=True)
class RamseyResult:
    holds: bool
    counterexample: object = None  # Graph when holds is False


class _TargetReached(Exception):
    pass


def _color_classes(rows, cand):
    """Greedy sequential coloring of ``cand``; returns ``(vertex, color)`` in color order."""
    colored = []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~(rows[v] | low)
            uncolored ^= low
            colored.append((v, color))
    return colored


class _CliqueSearch:
    def __init__(self, rows, stop_at, deadline):
        self.rows = rows
        self.stop_at = stop_at
        self.deadline = deadline
        self.best = []
        self.nodes = 0

    def expand(self, clique, cand):
        self.nodes += 1
        if self.nodes % _CLOCK_CHECK_EVERY == 0 and time.monotonic() > self.deadline:
            raise TimeoutError
        for v, color in reversed(_color_classes(self.rows, cand)):
            if len(clique) + color <= len(self.best):
                return
            clique.append(v)
            if self.stop_at is not None and len(clique) >= self.stop_at:
                self.best = list(clique)
                raise _TargetReached
            narrowed = cand & self.rows[v]
            if narrowed:
                self.expand(clique, narrowed)
            elif len(clique) > len(self.best):
                self.best = list(clique)
            clique.pop()
            cand &= ~(1 << v)


def max_clique_exact(g, stop_at=None, budget_secs=None):
    """Clique number of ``g`` (or any clique of size >= ``stop_at``).

    Raises BudgetExceeded carrying the best-so-far OracleResult when the time
    budget (default ``ORACLE_BUDGET_SECS``) runs out.
    """
    budget = ORACLE_BUDGET_SECS if budget_secs is None else budget_secs
    if g.n == 0 or (stop_at is not None and stop_at <= 0):
        return OracleResult(0, (), g.n == 0, 0)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    ordered = relabel(g, order)
    search = _CliqueSearch(ordered.rows, stop_at, time.monotonic() + budget)

    def result(exhausted):
        witness = tuple(sorted(order[i] for i in search.best))
        return OracleResult(len(search.best), witness, exhausted, search.nodes)

    try:
        search.expand([], ordered.full_mask)
    except _TargetReached:
        return result(False)
    except TimeoutError:
        best = result(False)
        logger.warning("⚠️ clique search hit its %.1fs budget at size %d", budget, best.best_size)
        raise BudgetExceeded(f"clique search exceeded {budget}s budget", best=best) from None
    return result(True)


def max_independent_set_exact(g, stop_at=None, budget_secs=None):
    return max_clique_exact(complement(g), stop_at=stop_at, budget_secs=budget_secs)


def hom_number(g, budget_secs=None):
    """max(clique number, independence number)."""
    clique = max_clique_exact(g, budget_secs=budget_secs)
    independent = max_independent_set_exact(g, budget_secs=budget_secs)
    return max(clique.best_size, independent.best_size)


def max_clique_cpsat(g, time_limit=None):
    """Maximum clique through CP-SAT: a Boolean per vertex, a clause per non-edge."""
    if g.n == 0:
        return OracleResult(0, (), True, 0)
    model = cp_model.CpModel()
    x = [model.NewBoolVar(f"x_{v}") for v in range(g.n)]
    for u, v in complement(g).edges():
        model.AddBoolOr([x[u].Not(), x[v].Not()])
    model.Maximize(sum(x))

    solver = cp_model.CpSolver()
    solver.parameters.max_time_in_seconds = ORACLE_BUDGET_SECS if time_limit is None else time_limit
    solver.parameters.num_workers = 1
    status = solver.Solve(model)
    if status not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
        raise BudgetExceeded("CP-SAT found no clique within its time limit")
    witness = tuple(v for v in range(g.n) if solver.Value(x[v]))
    return OracleResult(len(witness), witness, status == cp_model.OPTIMAL, int(solver.NumBranches()))


def _subset_pair_masks(n, size, pair_index):
    masks = []
    for subset in itertools.combinations(range(n), size):
        mask = 0
        for pair in itertools.combinations(subset, 2):
            mask |= 1 << pair_index[pair]
        masks.append(mask)
    return masks


def ramsey_check(n, s, t, max_pairs=None):
    """Exhaustively decide whether every n-vertex graph has a K_s or an independent t-set.

    Graphs are enumerated as bit codes over the C(n, 2) vertex pairs, all at
    once in a numpy vector.
    """
    max_pairs = RAMSEY_MAX_PAIRS if max_pairs is None else max_pairs
    if n < 0 or s < 1 or t < 1:
        raise InvalidInput(f"ramsey_check needs n >= 0 and s, t >= 1, got ({n}, {s}, {t})")
    pairs = list(itertools.combinations(range(n), 2))
    if len(pairs) > max_pairs:
        raise BudgetExceeded(f"{len(pairs)} vertex pairs exceed the exhaustive budget of {max_pairs}")
    if n >= 1 and min(s, t) == 1:
        return RamseyResult(True)

    pair_index = {pair: i for i, pair in enumerate(pairs)}
    codes = np.arange(1 << len(pairs), dtype=np.uint64)
    covered = np.zeros(codes.shape, dtype=bool)
    if s <= n:
        for mask in _subset_pair_masks(n, s, pair_index):
            covered |= (codes & np.uint64(mask)) == np.uint64(mask)
    if t <= n:
        for mask in _subset_pair_masks(n, t, pair_index):
            covered |= (codes & np.uint64(mask)) == 0
    if covered.all():
        return RamseyResult(True)
    code = int(np.argmin(covered))
    edges = [pair for i, pair in enumerate(pairs) if code >> i & 1]
    logger.debug("R(%d,%d) > %d witnessed by code %d", s, t, n, code)
    return RamseyResult(False, from_edges(n, edges))
