# scripts/run_acceptance_sweep.py
import sys

from config import DEFAULT_C, SWEEP_WORKERS
from services.sweep_service import run_sweep
from utils.graph_io import write_csv

N_LIST = [50, 100, 200, 400]
K_LIST = [2, 5, 10, 50, 100, 150, 300]
REPS = 50


def main(out="acceptance_sweep.csv", seed=0):
    print(f"Sweeping n={N_LIST} k={K_LIST} C={DEFAULT_C}, {REPS} graphs per cell ...")
    rows = run_sweep(N_LIST, K_LIST, DEFAULT_C, REPS, seed, workers=SWEEP_WORKERS, timing=False)
    write_csv(rows, out)
    failed = [row for row in rows if not row.verified]
    print(f"{len(rows)} rows written to {out}, {len(failed)} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:2]))
