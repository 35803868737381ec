"""Numeric bounds, thresholds and case classification. Pure arithmetic.

Logarithms are base 2 throughout. Binomials are exact Python ints.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from config import MAX_C, WITNESS_TOLERANCE
from models.errors import ConstraintViolation, InvalidInput, InvariantBreach
from models.params_model import CaseLabel, TheoremParams

CASE1_MAX_K = 100

_RELATIONS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: float
    relation: str
    rhs: float
    holds: bool
    hard: bool = True


def compare(name, lhs, relation, rhs, hard=True):
    return InequalityCheck(name, lhs, relation, rhs, _RELATIONS[relation](lhs, rhs), hard)


def validate_params(n, k, c):
    if isinstance(n, bool) or not isinstance(n, int) or n < 3:
        raise ConstraintViolation("n>=3", f"n must be an integer >= 3, got {n!r}")
    if not math.isfinite(k) or k < 2:
        raise ConstraintViolation("k>=2", f"k must be a real >= 2, got {k!r}")
    if not (0 < c <= MAX_C):
        raise ConstraintViolation("0<C<=0.01", f"C must lie in (0, {MAX_C}], got {c!r}")
    if k > n / (3 * c):
        raise ConstraintViolation("k<=n/(3C)", f"k={k} exceeds n/(3C)={n / (3 * c):.6g}")
    return TheoremParams(n=n, k=float(k), c=float(c))


def raw_target(n, k, c):
    return c * k * math.log2(n) / math.log2(k)


def target_size(p):
    return raw_target(p.n, p.k, p.c)


def required_size(target):
    """Smallest integer witness size that meets ``target`` up to the witness tolerance."""
    return max(1, math.ceil(target - WITNESS_TOLERANCE))


def exceeds_vertex_count(n, k, c):
    """Whether the size formula asks for more than n vertices (the regime k > n/C^2)."""
    return raw_target(n, k, c) > n


def eps_target_size(n, eps, c):
    eps = float(eps)
    return c * math.log2(n) / (eps * math.log2(1 / eps))


def check_target_fits(p):
    if p.k <= p.n / (p.c * p.c):
        target = target_size(p)
        if target > p.n:
            raise InvariantBreach("target_at_most_n", {"target": target, "n": p.n})


def classify_case(p):
    if p.k <= CASE1_MAX_K:
        return CaseLabel.CASE1
    if p.k >= math.sqrt(p.n):
        return CaseLabel.CASE2
    return CaseLabel.CASE3


def es_upper_bound(s, t):
    """Erdős–Szekeres: R(ceil s, ceil t) <= C(ceil s + ceil t - 2, ceil s - 1)."""
    if s < 1 or t < 1:
        raise InvalidInput(f"es_upper_bound needs s, t >= 1, got ({s}, {t})")
    s_int, t_int = math.ceil(s), math.ceil(t)
    return math.comb(s_int + t_int - 2, s_int - 1)


def turan_max_edges(n, r):
    """Most edges a K_r-free graph on n vertices can have."""
    if r < 2 or n < 1:
        raise InvalidInput(f"turan_max_edges needs r >= 2 and n >= 1, got n={n}, r={r}")
    return (1 - 1 / (r - 1)) * n * n / 2


def min_edge_count(n, k):
    """Smallest integer edge count with at least (1 - 1/k) C(n, 2) edges, exact in k's binary value."""
    return math.ceil((1 - 1 / Fraction(k)) * (n * (n - 1) // 2))


def meets_density(edge_count, n, k):
    return edge_count >= min_edge_count(n, k)


def turan_clique_order(p):
    return math.ceil(2 * p.c * p.k)


def case2_chain(p):
    """Numeric evaluation of the Turán chain behind the Case 2 guarantee."""
    r = turan_clique_order(p)
    n = p.n
    two_ck = 2 * p.c * p.k
    checks = [compare("target_within_2Ck", target_size(p), "<=", two_ck + WITNESS_TOLERANCE)]
    if r >= 3:
        middle = (1 - 1 / two_ck) * n * n / 2
        density_floor = (1 - 1 / p.k) * math.comb(n, 2)
        checks.append(compare("turan_cap_below_chain", turan_max_edges(n, r), "<", middle, hard=False))
        checks.append(compare("chain_below_density", middle, "<", density_floor, hard=False))
    return checks


@dataclass(frozen=True)
class BoundReport:
    target: float
    es_bound: int
    turan_limit: float
    degree_threshold: float
    neighbor_threshold: float
    subset_count_cap: float
    subset_s: float
    subset_t: float
    n_fifth: float
    n_quarter: float
    n_cube_root: float
    n_tenth_root: float
    sqrt_n: float
    b_floor: float

    def soft_checks(self):
        return [
            compare("subset_count_below_cube_root", self.subset_count_cap, "<", self.n_cube_root, hard=False),
            compare("pigeonhole_ratio_at_least_sqrt_n", self.n_quarter / self.n_cube_root, ">=", self.sqrt_n,
                    hard=False),
            compare("es_bound_below_tenth_root", self.es_bound, "<", self.n_tenth_root, hard=False),
        ]


def case3_thresholds(p, a_size):
    if a_size < 1:
        raise InvalidInput(f"case3_thresholds needs |A| >= 1, got {a_size}")
    n, k = p.n, p.k
    s = 10 * a_size / k
    t = k * math.log2(n) / (100 * math.log2(k))
    r = turan_clique_order(p)
    return BoundReport(
        target=target_size(p),
        es_bound=es_upper_bound(max(1.0, s), max(1.0, t)),
        turan_limit=turan_max_edges(n, r) if r >= 2 else 0.0,
        degree_threshold=(1 - 2 / k) * n,
        neighbor_threshold=(1 - 10 / k) * a_size,
        subset_count_cap=s * (math.e * k / 10) ** s,
        subset_s=s,
        subset_t=t,
        n_fifth=n / 5,
        n_quarter=n / 4,
        n_cube_root=n ** (1 / 3),
        n_tenth_root=n ** (1 / 10),
        sqrt_n=math.sqrt(n),
        b_floor=0.49 * n,
    )
