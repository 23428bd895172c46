"""Per-restart success rate of the [CNOT]-class GA at k=3, L=15 double tokens.

Each seed runs one restart of the full generation budget and reports the
plateau it ends on.  The landscape has deep local optima, so the fraction of
restarts below 1e-8 is what decides an 8-restart run.
"""
import argparse
import time

from su2k_braid.anyon_model import AnyonModel
from su2k_braid.search_engines import GAConfig, SearchConfig, ga_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--length", type=int, default=15)
    ap.add_argument("--population", type=int, default=2000)
    ap.add_argument("--generations", type=int, default=2000)
    ap.add_argument("--seeds", type=int, nargs=2, default=[100, 119], metavar=("FIRST", "STOP"))
    ap.add_argument("--collapse", action="store_true", help="enable identity-pair collapse")
    args = ap.parse_args()
    model = AnyonModel(args.k)
    gcfg = GAConfig(population_size=args.population, generations=args.generations, restarts=1,
                    stop_cost=1e-8, no_simplify_identity_pairs=not args.collapse)
    hits = 0
    seeds = range(*args.seeds)
    for seed in seeds:
        cfg = SearchConfig(n_qubits=2, length=args.length, fitness="cnot_class", rng_seed=seed)
        t0 = time.perf_counter()
        res = ga_search(cfg, gcfg, model)
        hits += res.fitness < 1e-8
        print(f"seed {seed}: {res.braidword.to_text()} cost={res.fitness:.3e} gen={res.generation_of_best} "
              f"{time.perf_counter() - t0:.0f}s", flush=True)
    print(f"{hits}/{len(seeds)} restarts below 1e-8")


if __name__ == "__main__":
    main()
