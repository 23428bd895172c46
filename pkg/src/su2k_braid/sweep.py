"""Sweep grids behind the SKA-convergence and [CNOT]-scaling figures.

Rows are appended to a JSON-lines file as points finish.  Re-running with the
same output path skips points already present, so an interrupted sweep can
be resumed.  Each point draws its seed from the master seed and its position
in the full grid, so results do not depend on which points were skipped.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .anyon_model import AnyonModel
from .search_engines import (
    GAConfig,
    NoAdmissibleWordError,
    SearchConfig,
    brute_force_search,
    ga_search,
)
from .sk_compiler import SKAConfig, ska_approximate
from .verification import GATES

LEVELS = (3, 5, 6, 7)
# elementary-braid lengths and engines per scheme
FIG3_GRID = {
    "single": [("bf", L) for L in (2, 4, 6, 8)] + [("ga", L) for L in (12, 16, 20, 24, 30)],
    "double": [("bf", L) for L in (2, 4, 6, 8, 12, 16)] + [("ga", L) for L in (20, 24, 30)],
}


def fig2_points(levels=LEVELS, max_level: int = 3) -> list[dict]:
    return [
        {"figure": "fig2", "k": k, "gate": g, "scheme": s, "max_level": max_level}
        for k in levels for g in ("H", "T") for s in ("single", "double")
    ]


def fig3_points(levels=LEVELS) -> list[dict]:
    return [
        {"figure": "fig3", "k": k, "scheme": s, "engine": e, "L": L}
        for k in levels for s in ("single", "double") for e, L in FIG3_GRID[s]
    ]


def point_id(p: dict) -> str:
    return "/".join(f"{k}={p[k]}" for k in sorted(p))


def run_point(p: dict, seed: int, ga: GAConfig) -> list[dict]:
    model = AnyonModel(p["k"])
    if p["figure"] == "fig2":
        cfg = SKAConfig(max_level=p["max_level"], scheme=p["scheme"], base_search=ga, rng_seed=seed)
        res = ska_approximate(GATES[p["gate"]], cfg, model)
        return [dict(p, seed=seed, **lvl) for lvl in res.levels]
    tokens = p["L"] // 2 if p["scheme"] == "double" else p["L"]
    scfg = SearchConfig(n_qubits=2, scheme=p["scheme"], length=tokens, fitness="cnot_class", rng_seed=seed)
    try:
        if p["engine"] == "bf":
            res = brute_force_search(scfg, model)
        else:
            res = ga_search(scfg, ga, model)
    except NoAdmissibleWordError:
        return [dict(p, seed=seed, tokens=tokens, admissible=False)]
    return [dict(p, seed=seed, tokens=tokens, braidword=res.braidword.to_text(), admissible=res.admissible, **res.metrics)]


def _job(args):
    p, seed, ga = args
    return point_id(p), run_point(p, seed, ga)


def run_sweep(
    figure: str,
    out: str | Path,
    master_seed: int = 0,
    budget: float | None = None,
    ga: GAConfig | None = None,
    levels=LEVELS,
    workers: int = 1,
) -> dict:
    """Run (or resume) a sweep; returns {done, skipped, remaining, partial}."""
    points = fig2_points(levels) if figure == "fig2" else fig3_points(levels)
    seeds = [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(master_seed).spawn(len(points))]
    ga = ga or GAConfig()
    out = Path(out)
    seen = set()
    if out.exists():
        for line in out.read_text().splitlines():
            rec = json.loads(line)
            if "point" in rec:
                seen.add(rec["point"])
    todo = [(p, s, ga) for p, s in zip(points, seeds) if point_id(p) not in seen]
    t0 = time.monotonic()
    done = 0

    def write(pid, rows):
        with open(out, "a") as fh:
            for r in rows:
                fh.write(json.dumps(dict(r, point=pid), sort_keys=True) + "\n")

    def over_budget():
        return budget is not None and time.monotonic() - t0 > budget

    if workers <= 1:
        for job in todo:
            if over_budget():
                break
            write(*_job(job))
            done += 1
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = []
            for job in todo:
                futures.append(pool.submit(_job, job))
            for fut in futures:
                if over_budget():
                    fut.cancel()
                    continue
                write(*fut.result())
                done += 1
    remaining = len(todo) - done
    status = {"done": done, "skipped": len(points) - len(todo), "remaining": remaining, "partial": remaining > 0}
    if remaining:
        with open(out, "a") as fh:
            fh.write(json.dumps({"status": "partial", "remaining": remaining}) + "\n")
    return status
