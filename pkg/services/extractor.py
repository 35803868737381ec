"""Constructive extraction of a clique or independent set of size C k log n / log k.

``extract`` classifies the parameters and runs one of three strategies:

* Case 1 (k <= 100): the Erdős–Szekeres recursion alone reaches the target.
* Case 2 (k >= sqrt n): Turán's theorem guarantees a clique; greedy first,
  exact search with early exit as fallback.
* Case 3 (100 < k < sqrt n): drop low-degree vertices, then repeatedly try
  to enlarge a clique A. Vertices nearly joined to A are grouped by the part
  of A they miss; inside the largest group the recursion either finds an
  independent set of target size or a clique that replaces the missed part
  of A and makes A strictly larger.

Every inequality the argument relies on is evaluated at runtime and
recorded in the ExtractionTrace; a failing hard check raises InvariantBreach.
"""
import math
from dataclasses import dataclass, field

from models.errors import BudgetExceeded, InvalidInput, InvariantBreach, PreconditionViolated
from models.graph_model import (
    Color,
    Homogeneity,
    check_homogeneous,
    eps_to_k,
    is_eps_balanced,
    iter_bits,
    majority_color,
    majority_graph,
    mask_to_vertices,
    vertices_to_mask,
)
from models.params_model import CaseLabel
from models.witness_model import (
    CaseUsed,
    HomogeneousWitness,
    MonochromaticWitness,
    WitnessKind,
    verify_witness,
)
from services.bounds import (
    CASE1_MAX_K,
    case2_chain,
    case3_thresholds,
    check_target_fits,
    classify_case,
    compare,
    es_upper_bound,
    meets_density,
    min_edge_count,
    required_size,
    target_size,
    turan_clique_order,
    turan_max_edges,
    validate_params,
)
from services.oracle import max_clique_exact
from utils.log_utils import get_logger

logger = get_logger("extractor")


@dataclass
class ExtractionTrace:
    case_used: CaseLabel
    target: float = 0.0
    w_removed: tuple = ()
    clique_history: list = field(default_factory=list)  # (iteration, |A|)
    a_prime: tuple = ()
    b_prime_size: int = 0
    es_calls: int = 0
    greedy_size: int = 0
    fallback_used: bool = False
    assertions_checked: list = field(default_factory=list)

    def require(self, name, lhs, relation, rhs):
        check = compare(name, lhs, relation, rhs)
        self.assertions_checked.append(check)
        if not check.holds:
            raise InvariantBreach(name, {"lhs": lhs, "relation": relation, "rhs": rhs}, trace=self)
        return check

    def observe(self, check):
        self.assertions_checked.append(check)


def _es_extract_within(g, cand, s, t):
    """Erdős–Szekeres recursion restricted to the vertex mask ``cand``.

    Unrolled: pivots taken on the neighbour side join the final set if it is a
    clique, pivots taken on the non-neighbour side join it if it is
    independent. Returns ``(kind, vertices, calls)``.
    """
    if s < 1 or t < 1:
        raise PreconditionViolated(f"es_extract needs s, t >= 1, got ({s}, {t})")
    size = cand.bit_count()
    if size < es_upper_bound(s, t):
        raise PreconditionViolated(f"{size} vertices is below es_upper_bound({s}, {t}) = {es_upper_bound(s, t)}")
    clique_side, independent_side = [], []
    calls = 0
    rows = g.rows
    while True:
        calls += 1
        low = cand & -cand
        v = low.bit_length() - 1
        if s == 1:
            return WitnessKind.CLIQUE, clique_side + [v], calls
        if t == 1:
            return WitnessKind.INDEPENDENT_SET, independent_side + [v], calls
        rest = cand ^ low
        neighbours = rest & rows[v]
        non_neighbours = rest ^ neighbours
        if neighbours.bit_count() >= es_upper_bound(s - 1, t):
            clique_side.append(v)
            cand, s = neighbours, s - 1
        elif non_neighbours.bit_count() >= es_upper_bound(s, t - 1):
            independent_side.append(v)
            cand, t = non_neighbours, t - 1
        else:
            raise InvariantBreach("pascal_split", {"neighbours": neighbours.bit_count(),
                                                   "non_neighbours": non_neighbours.bit_count(), "s": s, "t": t})


def es_extract(g, s, t, case_used=CaseUsed.TRIVIAL):
    """Clique of size exactly ``s`` or independent set of size exactly ``t``.

    Needs at least ``es_upper_bound(s, t)`` vertices. The pivot is always the
    lowest-index remaining vertex and the neighbour side wins ties.
    """
    kind, vertices, _ = _es_extract_within(g, g.full_mask, s, t)
    return HomogeneousWitness(kind, tuple(vertices), case_used)


def greedy_clique(g, within=None, stop_at=None):
    """Greedy clique: repeatedly take the candidate with fewest non-neighbours among candidates.

    This is minimum-degree greedy on the complement, so the clique has at
    least n / (average complement degree + 1) vertices. Ties go to the lowest
    index. ``within`` restricts the candidates to a vertex mask.
    """
    if g.n < 1:
        raise PreconditionViolated("greedy_clique needs at least one vertex")
    cand = g.full_mask if within is None else within
    clique = []
    rows = g.rows
    while cand:
        best_v, best_degree = -1, -1
        for v in mask_to_vertices(cand):
            degree = (rows[v] & cand).bit_count()
            if degree > best_degree:
                best_v, best_degree = v, degree
        clique.append(best_v)
        cand &= rows[best_v]
        if stop_at is not None and len(clique) >= stop_at:
            break
    return sorted(clique)


def group_by_missing_subset(h, a, k, within=None):
    """Group vertices outside clique ``a`` by the subset of ``a`` they are not joined to.

    Only vertices with more than (1 - 10/k)|a| neighbours in ``a`` are grouped;
    the rest are left out. Keys are sorted vertex tuples.
    """
    a = sorted(set(a))
    if check_homogeneous(h, a) not in (Homogeneity.CLIQUE, Homogeneity.BOTH):
        raise PreconditionViolated("group_by_missing_subset needs a clique")
    a_mask = vertices_to_mask(a)
    threshold = (1 - 10 / k) * len(a)
    outside = (h.full_mask if within is None else within) & ~a_mask
    groups = {}
    for b in mask_to_vertices(outside):
        hits = h.rows[b] & a_mask
        if hits.bit_count() > threshold:
            key = tuple(iter_bits(a_mask ^ hits))
            groups.setdefault(key, []).append(b)
    return groups


def _check_contract(g, p, label):
    p = validate_params(p.n, p.k, p.c)
    if p.n != g.n:
        raise InvalidInput(f"params are for n={p.n} but the graph has {g.n} vertices")
    if not meets_density(g.edge_count, g.n, p.k):
        raise PreconditionViolated(
            f"{g.edge_count} edges is below (1 - 1/k) C(n, 2) = {min_edge_count(g.n, p.k)} for k={p.k}")
    if label is not None and not _in_case_range(p, label):
        raise PreconditionViolated(f"k={p.k}, n={p.n} is outside the range of {label.value}")
    return p


def _in_case_range(p, label):
    if label is CaseLabel.CASE1:
        return p.k <= CASE1_MAX_K
    if label is CaseLabel.CASE2:
        return p.k >= math.sqrt(p.n)
    return CASE1_MAX_K < p.k < math.sqrt(p.n)


def extract_case1(g, p):
    p = _check_contract(g, p, CaseLabel.CASE1)
    trace = ExtractionTrace(CaseLabel.CASE1, target=target_size(p))
    s = t = required_size(trace.target)
    trace.require("es_bound_fits_n", g.n, ">=", es_upper_bound(s, t))
    kind, vertices, calls = _es_extract_within(g, g.full_mask, s, t)
    trace.es_calls += calls
    return HomogeneousWitness(kind, tuple(vertices), CaseUsed.CASE1), trace


def extract_case2(g, p):
    p = _check_contract(g, p, CaseLabel.CASE2)
    trace = ExtractionTrace(CaseLabel.CASE2, target=target_size(p))
    needed = required_size(trace.target)
    r = turan_clique_order(p)
    for check in case2_chain(p):
        if check.hard:
            trace.require(check.name, check.lhs, check.relation, check.rhs)
        else:
            trace.observe(check)
    if r >= 2:
        trace.require("edges_exceed_turan_cap", g.edge_count, ">", turan_max_edges(g.n, r))
    trace.require("needed_within_turan_order", needed, "<=", max(r, 1))

    clique = greedy_clique(g)
    trace.greedy_size = len(clique)
    if len(clique) >= needed:
        return HomogeneousWitness(WitnessKind.CLIQUE, tuple(clique), CaseUsed.CASE2), trace

    logger.debug("greedy clique of size %d misses %d; falling back to exact search", len(clique), needed)
    trace.fallback_used = True
    try:
        result = max_clique_exact(g, stop_at=needed)
    except BudgetExceeded as exc:
        exc.trace = trace
        raise
    trace.require("fallback_reaches_needed", result.best_size, ">=", needed)
    return HomogeneousWitness(WitnessKind.CLIQUE, result.witness, CaseUsed.CASE2), trace


def _pick_largest_group(groups):
    return min(groups.items(), key=lambda item: (-len(item[1]), item[0]))


def extract_case3(g, p, initial_clique=None):
    p = _check_contract(g, p, CaseLabel.CASE3)
    n = g.n
    trace = ExtractionTrace(CaseLabel.CASE3, target=target_size(p))
    needed = required_size(trace.target)

    degree_threshold = case3_thresholds(p, 1).degree_threshold
    w_removed = tuple(v for v in range(n) if g.degree(v) < degree_threshold)
    trace.w_removed = w_removed
    trace.require("w_at_most_half_n", len(w_removed), "<=", n / 2)
    h_mask = g.full_mask & ~vertices_to_mask(w_removed)
    h_size = n - len(w_removed)
    logger.debug("case3: |W|=%d, |V(H)|=%d, target=%.4f", len(w_removed), h_size, trace.target)

    if initial_clique is not None:
        a = sorted(set(initial_clique))
        if not a:
            raise PreconditionViolated("initial clique must not be empty")
        if any(not 0 <= v < n or h_mask >> v & 1 == 0 for v in a):
            raise PreconditionViolated("initial clique must lie inside G - W")
        if check_homogeneous(g, a) not in (Homogeneity.CLIQUE, Homogeneity.BOTH):
            raise PreconditionViolated("initial clique is not a clique")
    else:
        a = greedy_clique(g, within=h_mask, stop_at=needed)
        trace.greedy_size = len(a)

    iteration = 0
    trace.clique_history.append((iteration, len(a)))
    while len(a) < needed:
        iteration += 1
        trace.require("iterations_at_most_n", iteration, "<=", n)
        report = case3_thresholds(p, len(a))
        groups = group_by_missing_subset(g, a, p.k, within=h_mask)
        b_size = h_size - len(a)
        qualifying = sum(len(members) for members in groups.values())
        trace.require("bad_vertices_at_most_fifth_n", b_size - qualifying, "<=", report.n_fifth)
        trace.require("qualifying_at_least_quarter_n", qualifying, ">=", report.n_quarter)
        a_prime, b_prime = _pick_largest_group(groups)
        trace.a_prime, trace.b_prime_size = a_prime, len(b_prime)
        trace.require("b_prime_at_least_sqrt_n", len(b_prime), ">=", report.sqrt_n)
        s0, t0 = len(a_prime) + 1, needed
        trace.require("b_prime_meets_es_bound", len(b_prime), ">=", es_upper_bound(s0, t0))
        trace.observe(compare("b_at_least_049n", b_size, ">=", report.b_floor, hard=False))
        for check in report.soft_checks():
            trace.observe(check)

        kind, found, calls = _es_extract_within(g, vertices_to_mask(b_prime), s0, t0)
        trace.es_calls += calls
        if kind is WitnessKind.INDEPENDENT_SET:
            return HomogeneousWitness(kind, tuple(found), CaseUsed.CASE3), trace

        grown = sorted(set(a) - set(a_prime) | set(found))
        trace.require("clique_grows", len(grown), ">", len(a))
        merged = check_homogeneous(g, grown)
        trace.require("merged_is_clique", int(merged in (Homogeneity.CLIQUE, Homogeneity.BOTH)), ">=", 1)
        a = grown
        trace.clique_history.append((iteration, len(a)))
        logger.debug("case3 iteration %d: |A'|=%d, |B'|=%d, |A| -> %d", iteration, len(a_prime), len(b_prime), len(a))
    return HomogeneousWitness(WitnessKind.CLIQUE, tuple(a), CaseUsed.CASE3), trace


_CASE_HANDLERS = {
    CaseLabel.CASE1: extract_case1,
    CaseLabel.CASE2: extract_case2,
}


def extract(g, p, initial_clique=None):
    """Certified homogeneous set of size >= C k log n / log k in a graph with >= (1 - 1/k) C(n, 2) edges.

    ``initial_clique`` only seeds the Case 3 loop and is ignored elsewhere.
    """
    p = _check_contract(g, p, None)
    check_target_fits(p)
    label = classify_case(p)
    target = target_size(p)
    logger.debug("extract: n=%d k=%s C=%s target=%.4f -> %s", p.n, p.k, p.c, target, label.value)

    if required_size(target) <= 1:
        trace = ExtractionTrace(label, target=target)
        witness = HomogeneousWitness(WitnessKind.CLIQUE, (0,), CaseUsed.TRIVIAL)
    elif label is CaseLabel.CASE3:
        witness, trace = extract_case3(g, p, initial_clique)
    else:
        if initial_clique is not None:
            logger.warning("⚠️ initial clique ignored outside case3 (got %s)", label.value)
        witness, trace = _CASE_HANDLERS[label](g, p)

    if not verify_witness(g, witness, p):
        raise InvariantBreach("witness_verifies", {"kind": witness.kind.value, "size": witness.size,
                                                   "target": target}, trace=trace)
    return witness, trace


def monochromatic_clique(c, eps, c_const):
    """Monochromatic clique in a coloring of K_n that is not ``eps``-balanced.

    Runs ``extract`` on the majority graph with k = 1/eps. A clique there is
    monochromatic in the majority color, an independent set in the other one.
    """
    if is_eps_balanced(c, eps):
        raise PreconditionViolated(f"coloring is {eps}-balanced; nothing to extract")
    g, _ = majority_graph(c)
    p = validate_params(c.n, float(eps_to_k(eps)), c_const)
    witness, trace = extract(g, p)
    dominant = majority_color(c)
    if witness.kind is WitnessKind.CLIQUE:
        color = dominant
    else:
        color = Color.BLUE if dominant is Color.RED else Color.RED
    return MonochromaticWitness(color, witness), trace
