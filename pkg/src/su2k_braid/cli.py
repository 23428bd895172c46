"""Command-line front end.

Exit codes: 0 success, 2 verification failure (or compile result above the
threshold), 3 no admissible search result, 4 configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .anyon_model import AnyonModel, ModelError, verify_consistency
from .braid_generators import Braidword, BraidwordError
from .mobility import MobilityError, mobility_schedule
from .search_engines import (
    BudgetExceededError,
    GAConfig,
    NoAdmissibleWordError,
    SearchConfig,
    brute_force_search,
    ga_search,
    load_run_config,
)
from .sk_compiler import SKAConfig, SKError, ska_approximate
from .sweep import run_sweep
from .verification import GATES, verify_tables

EXIT_OK, EXIT_VERIFY, EXIT_INADMISSIBLE, EXIT_CONFIG = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def _emit(payload: str, out: str | None) -> None:
    if out:
        Path(out).write_text(payload + "\n")
    else:
        print(payload)


def parse_gate(text: str) -> np.ndarray:
    """H, T, I, or four comma-separated complex entries in row-major order."""
    if text.upper() in GATES:
        return GATES[text.upper()]
    try:
        vals = [complex(s.strip().replace(" ", "")) for s in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse gate {text!r}") from exc
    if len(vals) != 4:
        raise ConfigError("custom gates need exactly four entries")
    u = np.array(vals, dtype=complex).reshape(2, 2)
    if np.abs(u @ u.conj().T - np.eye(2)).max() > 1e-8:
        raise ConfigError("custom gate is not unitary")
    return u


def _ga_config(args, default: GAConfig | None = None) -> GAConfig:
    """GA settings from --config/--budget/--restarts layered over ``default``."""
    default = default or GAConfig()
    kw = {f: getattr(default, f) for f in default.__dataclass_fields__}
    if args.config:
        _, ga = load_run_config(args.config)
        kw.update({f: getattr(ga, f) for f in ga.__dataclass_fields__})
    if args.budget is not None:
        kw["generations"] = int(args.budget)
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    return GAConfig(**kw)


def cmd_model_info(args) -> int:
    model = AnyonModel(args.k)
    rep = verify_consistency(model)
    x = model.qubit_anyon
    fusion = {f"{a}x{b}": model.fusion_channels(a, b) for a in model.labels for b in model.labels if a <= b}
    fx = model.f_matrix(x, x, x, x)
    summary = {
        "k": model.level,
        "deformation_angle": model.deformation_angle,
        "qubit_anyon": x,
        "fusion": fusion,
        "R_qubit": {str(c): [model.r_symbol(x, x, c).real, model.r_symbol(x, x, c).imag] for c in model.fusion_channels(x, x)},
        "F_qubit": {"rows": fx.rows, "cols": fx.cols, "matrix": fx.matrix.real.tolist()},
        "residuals": rep._asdict(),
    }
    print(json.dumps(summary, indent=1))
    if args.out:
        Path(args.out).write_text(model.to_json())
    return EXIT_OK


def cmd_compile(args) -> int:
    target = parse_gate(args.gate)
    model = AnyonModel(args.k)
    if args.engine == "ska":
        base = _ga_config(args, SKAConfig().base_search)
        cfg = SKAConfig(max_level=args.level, scheme=args.scheme, base_search=base, rng_seed=args.seed)
        res = ska_approximate(target, cfg, model)
        payload, dist = res.to_json(), res.distance
    else:
        scfg = SearchConfig(n_qubits=1, scheme=args.scheme, length=args.length, target=target, rng_seed=args.seed)
        if args.engine == "bf":
            res = brute_force_search(scfg, model, prune_inverse_pairs=args.prune)
        else:
            res = ga_search(scfg, _ga_config(args), model)
        payload, dist = res.to_json(), res.metrics["distance"]
    _emit(payload, args.out)
    return EXIT_OK if dist < args.threshold else EXIT_VERIFY


def cmd_compile_cnot(args) -> int:
    model = AnyonModel(args.k)
    scfg = SearchConfig(n_qubits=2, scheme=args.scheme, length=args.length, fitness="cnot_class", rng_seed=args.seed)
    if args.length == 0:
        res = brute_force_search(scfg, model)
    else:
        res = ga_search(scfg, _ga_config(args), model)
    _emit(res.report(args.k).to_json(), args.out)
    return EXIT_OK if res.admissible else EXIT_INADMISSIBLE


def cmd_verify_tables(args) -> int:
    tol = {}
    if args.tol_distance is not None:
        tol["table1_distance_abs"] = args.tol_distance
    if args.tol_rel is not None:
        tol["table2_d_cnot_rel"] = args.tol_rel
    res = verify_tables(tol)
    for r in res["records"]:
        mark = "PASS" if r.ok else "FAIL"
        got = ", ".join(f"{m}={v:.6g}" for m, v in r.computed.items())
        exp = ", ".join(f"{m}={v:.6g}" for m, v in r.expected.items())
        print(f"{mark} table {r.table} k={r.k} {r.gate:4s} {r.braidword}: {got} (expected {exp})")
    print(f"pinned composition order: {res['pinned_order']} (unique full pass: {res['unique']})")
    if args.out:
        Path(args.out).write_text(json.dumps(
            {k: v for k, v in res.items() if k != "records"} | {"records": [r.to_dict() for r in res["records"]]},
            indent=1,
        ))
    return EXIT_OK if res["ok"] else EXIT_VERIFY


def cmd_sweep(args) -> int:
    if not args.out:
        raise ConfigError("sweep needs --out")
    ga = _ga_config(args, SKAConfig().base_search if args.figure == "fig2" else None)
    levels = tuple(args.levels) if args.levels else (3, 5, 6, 7)
    status = run_sweep(args.figure, args.out, args.seed, args.time_budget, ga, levels, args.workers)
    print(json.dumps(status))
    if status["partial"]:
        print("sweep budget exhausted; output flagged partial, rerun to resume", file=sys.stderr)
    return EXIT_OK


def cmd_mobility(args) -> int:
    n_qubits = args.qubits or (2 if set(args.braidword.split(":")[-1]) - set("ABCD") else 1)
    word = Braidword.parse(args.braidword, n_qubits)
    rep = mobility_schedule(word)
    _emit(rep.to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="su2k-braid", description="SU(2)_k braid compiler")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k=True):
        if k:
            sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--out")
        return sp

    def search_opts(sp, length):
        sp.add_argument("--scheme", choices=("single", "double"), default="double")
        sp.add_argument("--length", type=int, default=length, help="tokens per word")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, help="GA generations per restart")
        sp.add_argument("--restarts", type=int)
        sp.add_argument("--config", help="key = value run-config file")

    sp = common(sub.add_parser("model-info", help="fusion data and consistency residuals"))
    sp.set_defaults(func=cmd_model_info)

    sp = common(sub.add_parser("compile", help="compile a single-qubit gate"))
    sp.add_argument("--gate", default="H")
    sp.add_argument("--engine", choices=("bf", "ga", "ska"), default="ska")
    sp.add_argument("--level", type=int, default=2)
    sp.add_argument("--threshold", type=float, default=1e-3)
    sp.add_argument("--prune", action="store_true", help="skip words with adjacent inverse pairs (bf)")
    search_opts(sp, 15)
    sp.set_defaults(func=cmd_compile)

    sp = common(sub.add_parser("compile-cnot", help="search the [CNOT] class"))
    search_opts(sp, 15)
    sp.set_defaults(func=cmd_compile_cnot)

    sp = common(sub.add_parser("verify-tables", help="re-evaluate the published braidwords"), k=False)
    sp.add_argument("--tol-distance", type=float)
    sp.add_argument("--tol-rel", type=float)
    sp.set_defaults(func=cmd_verify_tables)

    sp = common(sub.add_parser("sweep", help="figure data sweeps (JSON lines, resumable)"), k=False)
    sp.add_argument("figure", choices=("fig2", "fig3"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--time-budget", type=float, help="wall-clock seconds before stopping")
    sp.add_argument("--budget", type=int, help="GA generations per restart")
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--config")
    sp.add_argument("--levels", type=int, nargs="*")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    sp = common(sub.add_parser("mobility", help="mobile-anyon schedule of a double-braid word"), k=False)
    sp.add_argument("braidword")
    sp.add_argument("--qubits", type=int, choices=(1, 2))
    sp.set_defaults(func=cmd_mobility)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoAdmissibleWordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (ModelError, ConfigError, BraidwordError, MobilityError, SKError, BudgetExceededError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
