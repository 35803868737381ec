"""Batch extraction over an (n, k) grid, one seeded random instance per cell and repetition."""
import concurrent.futures
import functools
import time
from dataclasses import dataclass

import numpy as np

from config import SWEEP_WORKERS
from models.errors import ConstraintViolation, ExtractionError
from models.params_model import TheoremParams
from models.witness_model import verify_witness
from services.bounds import min_edge_count, target_size, validate_params
from services.extractor import extract
from services.generators import random_graph_exact_edges
from utils.log_utils import get_logger

logger = get_logger("sweep")


@dataclass(frozen=True)
class SweepCell:
    n: int
    k: float
    c: float
    rep: int
    seed: int


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: float
    c: float
    case_used: str
    witness_kind: str
    witness_size: int
    target: float
    ratio: float
    seed: int
    elapsed_ms: int
    verified: bool

    def csv_fields(self):
        return [self.n, repr(self.k), repr(self.c), self.case_used, self.witness_kind, self.witness_size,
                repr(self.target), repr(self.ratio), self.seed, self.elapsed_ms]


def derive_seed(base_seed, n, k, rep):
    sequence = np.random.SeedSequence([base_seed, n, round(k * 1_000_000), rep])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def build_grid(n_list, k_list, c, reps, base_seed):
    """Cells in n-major, k, rep order. Parameter triples that fail validation are skipped."""
    cells = []
    for n in n_list:
        for k in k_list:
            try:
                validate_params(n, k, c)
            except ConstraintViolation as exc:
                logger.warning("⚠️ skipping n=%d k=%s: %s", n, k, exc)
                continue
            cells.extend(SweepCell(n, float(k), float(c), rep, derive_seed(base_seed, n, k, rep))
                         for rep in range(reps))
    return cells


def run_cell(cell, timing=True):
    started = time.perf_counter()
    p = TheoremParams(cell.n, cell.k, cell.c)
    target = target_size(p)
    try:
        g = random_graph_exact_edges(cell.n, min_edge_count(cell.n, cell.k), cell.seed)
        witness, _ = extract(g, p)
        verified = verify_witness(g, witness, p)
        case_used, kind, size = witness.case_used.value, witness.kind.value, witness.size
    except ExtractionError as exc:
        logger.warning("⚠️ cell n=%d k=%s seed=%d failed: %s %s", cell.n, cell.k, cell.seed, exc.code, exc)
        case_used, kind, size, verified = "error", exc.code, 0, False
    elapsed_ms = round((time.perf_counter() - started) * 1000) if timing else 0
    return SweepRow(cell.n, cell.k, cell.c, case_used, kind, size, target, size / target, cell.seed,
                    elapsed_ms, verified)


def run_sweep(n_list, k_list, c, reps, base_seed, workers=None, timing=True):
    """Run every grid cell; rows come back in grid order whatever the worker count."""
    workers = SWEEP_WORKERS if workers is None else workers
    cells = build_grid(n_list, k_list, c, reps, base_seed)
    task = functools.partial(run_cell, timing=timing)
    if workers <= 1 or len(cells) <= 1:
        return [task(cell) for cell in cells]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(task, cells))
