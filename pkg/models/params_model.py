from dataclasses import dataclass
from enum import Enum


class CaseLabel(str, Enum):
    CASE1 = "case1"  # k <= 100
    CASE2 = "case2"  # k >= sqrt(n)
    CASE3 = "case3"  # 100 < k < sqrt(n)


@dataclass(frozen=True)
class TheoremParams:
    """The triple (n, k, C). Build through ``services.bounds.validate_params``."""

    n: int
    k: float
    c: float
