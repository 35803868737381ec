"""Graphs and two-colorings of K_n stored as bit rows.

Row ``v`` of a :class:`Graph` is a Python int whose bit ``u`` is set iff
``u`` and ``v`` are adjacent, so degree and common-neighbourhood queries
are single word-parallel ``&`` / ``bit_count`` operations. Bulk row
construction goes through numpy's bit packing.
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import networkx as nx
import numpy as np

from config import BALANCE_TOLERANCE
from models.errors import InvalidInput


class Homogeneity(str, Enum):
    CLIQUE = "clique"
    INDEPENDENT_SET = "independent_set"
    BOTH = "both"
    NEITHER = "neither"


class Color(str, Enum):
    RED = "red"
    BLUE = "blue"


def iter_bits(mask):
    """Yield set bit positions in ascending order. Meant for sparse masks."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_vertices(mask):
    """Ascending list of set bit positions, via numpy unpacking."""
    if mask == 0:
        return []
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def vertices_to_mask(vertices):
    indices = np.fromiter(vertices, dtype=np.int64)
    if indices.size == 0:
        return 0
    return _pack_bits(indices, int(indices.max()) + 1)


def _pack_bits(indices, width):
    buf = np.zeros(((width + 7) // 8) * 8, dtype=np.uint8)
    buf[indices] = 1
    return int.from_bytes(np.packbits(buf, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    n: int
    rows: tuple = field(repr=False)
    edge_count: int

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    @property
    def pair_count(self):
        return self.n * (self.n - 1) // 2

    def is_adjacent(self, u, v):
        return (self.rows[u] >> v) & 1 == 1

    def degree(self, v):
        return self.rows[v].bit_count()

    def neighbors(self, v):
        return mask_to_vertices(self.rows[v])

    def edges(self):
        """Yield edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        for u in range(self.n):
            for v in mask_to_vertices(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v


def graph_from_rows(n, rows):
    rows = tuple(rows)
    return Graph(n=n, rows=rows, edge_count=sum(row.bit_count() for row in rows) // 2)


def graph_from_pairs(n, us, vs):
    """Build a graph from two parallel endpoint arrays; duplicates collapse.

    Endpoints are assumed validated (in range, no self-loops).
    """
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    if us.size == 0:
        return Graph(n=n, rows=(0,) * n, edge_count=0)
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.argsort(src, kind="stable")
    src, dst = src[order], dst[order]
    bounds = np.searchsorted(src, np.arange(n + 1))
    rows = []
    for v in range(n):
        lo, hi = bounds[v], bounds[v + 1]
        rows.append(_pack_bits(dst[lo:hi], n) if hi > lo else 0)
    return graph_from_rows(n, rows)


def from_edges(n, edges):
    if not isinstance(n, int) or n < 0:
        raise InvalidInput(f"vertex count must be a non-negative integer, got {n!r}")
    pairs = [tuple(edge) for edge in edges]
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidInput(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise InvalidInput(f"self-loop at vertex {u}")
    return graph_from_pairs(n, [u for u, _ in pairs], [v for _, v in pairs])


def complement(g):
    full = g.full_mask
    rows = tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows))
    return Graph(n=g.n, rows=rows, edge_count=g.pair_count - g.edge_count)


def _check_vertices(g, vertices):
    for v in vertices:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
            raise InvalidInput(f"vertex {v!r} outside [0, {g.n})")


def relabel(g, order):
    """Graph on ``len(order)`` vertices where local ``i`` is ``order[i]`` of ``g``.

    ``order`` may be any list of distinct vertices; a sorted subset gives the
    induced subgraph, a permutation gives an isomorphic copy.
    """
    order = list(order)
    _check_vertices(g, order)
    if order == list(range(g.n)):
        return g
    keep = np.asarray(order, dtype=np.int64)
    nbytes = (g.n + 7) // 8
    rows = []
    for v in order:
        raw = np.frombuffer(g.rows[v].to_bytes(nbytes, "little"), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[keep]
        rows.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return graph_from_rows(len(order), rows)


def induced_subgraph(g, s):
    """Return ``(H, index_map)`` where ``index_map[i]`` is the vertex of ``g`` behind local ``i``."""
    index_map = sorted(set(s))
    return relabel(g, index_map), index_map


def check_homogeneous(g, s):
    vertices = sorted(set(s))
    _check_vertices(g, vertices)
    if len(vertices) <= 1:
        return Homogeneity.BOTH
    mask = vertices_to_mask(vertices)
    if all(g.rows[v] & mask == mask ^ (1 << v) for v in vertices):
        return Homogeneity.CLIQUE
    if all(g.rows[v] & mask == 0 for v in vertices):
        return Homogeneity.INDEPENDENT_SET
    return Homogeneity.NEITHER


def toggle_edge(g, u, v):
    _check_vertices(g, (u, v))
    if u == v:
        raise InvalidInput(f"self-loop at vertex {u}")
    rows = list(g.rows)
    rows[u] ^= 1 << v
    rows[v] ^= 1 << u
    delta = 1 if rows[u] >> v & 1 else -1
    return Graph(n=g.n, rows=tuple(rows), edge_count=g.edge_count + delta)


def to_networkx(g):
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph


@dataclass(frozen=True)
class TwoColoring:
    """Red/blue coloring of K_n, stored as its red class; blue is the complement."""

    n: int
    red: Graph

    @property
    def red_count(self):
        return self.red.edge_count

    @property
    def blue_count(self):
        return self.red.pair_count - self.red.edge_count

    def blue(self):
        return complement(self.red)


def coloring_from_red_edges(n, red_edges):
    return TwoColoring(n=n, red=from_edges(n, red_edges))


def majority_graph(c):
    """Graph of the larger color class plus the fraction carried by the other.

    Equal classes resolve to red.
    """
    if c.n < 2:
        raise InvalidInput(f"majority graph needs n >= 2, got {c.n}")
    total = c.red.pair_count
    if c.red_count >= c.blue_count:
        return c.red, Fraction(c.blue_count, total)
    return c.blue(), Fraction(c.red_count, total)


def majority_color(c):
    return Color.RED if c.red_count >= c.blue_count else Color.BLUE


def _is_exact(value):
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def validate_eps(eps):
    if _is_exact(eps):
        ok = 0 < Fraction(eps) <= Fraction(1, 2)
    else:
        ok = 0 < eps <= 0.5
    if not ok:
        raise InvalidInput(f"eps must lie in (0, 1/2], got {eps}")


def min_color_edges(eps, total):
    """Fewest edges a color may carry and still cover an ``eps``-fraction of ``total``."""
    if _is_exact(eps):
        return math.ceil(Fraction(eps) * total)
    return max(0, math.ceil(eps * total - BALANCE_TOLERANCE))


def is_eps_balanced(c, eps):
    validate_eps(eps)
    floor = min_color_edges(eps, c.red.pair_count)
    return min(c.red_count, c.blue_count) >= floor


def eps_to_k(eps):
    validate_eps(eps)
    return 1 / Fraction(eps) if _is_exact(eps) else 1.0 / eps


def k_to_eps(k):
    return 1 / Fraction(k) if _is_exact(k) else 1.0 / k
