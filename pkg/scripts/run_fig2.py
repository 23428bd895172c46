"""SKA convergence data: distance vs level for H and T, both schemes.

Thin wrapper over ``su2k_braid.sweep``; rerun with the same --out to resume.
"""
import argparse

from su2k_braid.sk_compiler import SKAConfig
from su2k_braid.sweep import run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fig2.jsonl")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--levels", type=int, nargs="*", default=[3, 5, 6, 7])
    ap.add_argument("--time-budget", type=float, default=None, help="seconds")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    status = run_sweep("fig2", args.out, args.seed, args.time_budget, SKAConfig().base_search,
                       tuple(args.levels), args.workers)
    print(status)


if __name__ == "__main__":
    main()
