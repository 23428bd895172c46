"""Best [CNOT]-class distance vs braid length for both schemes.

Short lengths use brute force, longer ones the GA.  The brute-force points
at L=16 (8 double tokens, 10^8 words) take a long time on one core, so a
time budget is the usual way to run this; rerun to resume.
"""
import argparse

from su2k_braid.search_engines import GAConfig
from su2k_braid.sweep import run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fig3.jsonl")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--levels", type=int, nargs="*", default=[3, 5, 6, 7])
    ap.add_argument("--time-budget", type=float, default=None, help="seconds")
    ap.add_argument("--population", type=int, default=200)
    ap.add_argument("--generations", type=int, default=2000)
    ap.add_argument("--restarts", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    ga = GAConfig(population_size=args.population, generations=args.generations, restarts=args.restarts,
                  no_simplify_identity_pairs=True)
    print(run_sweep("fig3", args.out, args.seed, args.time_budget, ga, tuple(args.levels), args.workers))


if __name__ == "__main__":
    main()
