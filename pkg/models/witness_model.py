from dataclasses import dataclass
from enum import Enum

from config import WITNESS_TOLERANCE
from models.errors import InvalidInput
from models.graph_model import Color, Homogeneity, check_homogeneous
from models.params_model import CaseLabel
from services.bounds import target_size, validate_params


class WitnessKind(str, Enum):
    CLIQUE = "clique"
    INDEPENDENT_SET = "independent_set"


class CaseUsed(str, Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    TRIVIAL = "trivial"

    @classmethod
    def from_label(cls, label):
        return cls(CaseLabel(label).value)


@dataclass(frozen=True)
class HomogeneousWitness:
    """A clique or independent set together with the case that produced it."""

    kind: WitnessKind
    vertices: tuple
    case_used: CaseUsed = CaseUsed.TRIVIAL

    def __post_init__(self):
        vertices = tuple(sorted(int(v) for v in self.vertices))
        if len(set(vertices)) != len(vertices):
            raise InvalidInput("witness vertices must be distinct")
        if vertices and vertices[0] < 0:
            raise InvalidInput(f"negative witness vertex {vertices[0]}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "kind", WitnessKind(self.kind))
        object.__setattr__(self, "case_used", CaseUsed(self.case_used))

    @property
    def size(self):
        return len(self.vertices)


@dataclass(frozen=True)
class MonochromaticWitness:
    """Homogeneous set of a coloring: a clique all of whose pairs share ``color``."""

    color: Color
    witness: HomogeneousWitness

    @property
    def vertices(self):
        return self.witness.vertices


_ACCEPTED = {
    WitnessKind.CLIQUE: {Homogeneity.CLIQUE, Homogeneity.BOTH},
    WitnessKind.INDEPENDENT_SET: {Homogeneity.INDEPENDENT_SET, Homogeneity.BOTH},
}


def verify_witness(g, w, p):
    """True iff ``w`` is homogeneous of its kind in ``g`` and reaches the target size."""
    p = validate_params(p.n, p.k, p.c)
    if p.n != g.n:
        raise InvalidInput(f"params are for n={p.n} but the graph has {g.n} vertices")
    if any(v >= g.n for v in w.vertices):
        return False
    if check_homogeneous(g, w.vertices) not in _ACCEPTED[w.kind]:
        return False
    return w.size >= target_size(p) - WITNESS_TOLERANCE
