"""Brute-force and genetic-algorithm braidword search.

Both engines minimise a cost over fixed-length index words.  For one-qubit
targets the cost is the phase-invariant distance.  For the two-qubit [CNOT]
class the cost is lexicographic: admissible words (d^U < u_max and
M11 > m_min) are ranked by d^CNOT, and every inadmissible word costs
``INADMISSIBLE`` plus its constraint violation, so it always ranks below any
admissible one.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable

import numpy as np

from .anyon_model import AnyonModel
from .braid_generators import (
    BlockEvaluator,
    Braidword,
    alphabet,
    evaluate,
    evaluate_batch,
    inverse_letter_indices,
    letter_matrices,
)
from .gate_metrics import TwoQubitReport, phase_invariant_distance, two_qubit_costs

INADMISSIBLE = 1e9
FITNESS_KINDS = ("distance", "cnot_class")


class SearchError(RuntimeError):
    pass


class BudgetExceededError(SearchError):
    pass


class NoAdmissibleWordError(SearchError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n_qubits: int = 1
    scheme: str = "double"
    length: int = 15
    fitness: str = "distance"
    target: np.ndarray | None = field(default=None, compare=False)
    u_max: float = 0.1
    m_min: float = 0.99
    rng_seed: int = 0
    du_method: str = "elementwise"

    def __post_init__(self):
        alphabet(self.n_qubits)
        if self.length < 0:
            raise ValueError(f"length must be >= 0, got {self.length}")
        if self.fitness not in FITNESS_KINDS:
            raise ValueError(f"fitness must be one of {FITNESS_KINDS}")
        if self.fitness == "distance":
            if self.n_qubits != 1:
                raise ValueError("distance fitness is defined for one-qubit targets")
            if self.target is None or np.shape(self.target) != (2, 2):
                raise ValueError("distance fitness needs a 2x2 target")
        if self.fitness == "cnot_class" and self.n_qubits != 2:
            raise ValueError("cnot_class fitness needs n_qubits=2")
        if self.u_max <= 0 or not 0 < self.m_min < 1:
            raise ValueError("need u_max > 0 and 0 < m_min < 1")


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 200
    generations: int = 2000
    tournament_size: int = 4
    crossover_rate: float = 0.7
    mutation_rate: float = 0.05
    elitism_count: int = 2
    restarts: int = 8
    no_simplify_identity_pairs: bool = False
    replace_duplicates: bool = True
    stop_cost: float | None = None

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.elitism_count <= self.population_size:
            raise ValueError("elitism_count must lie in [0, population_size]")
        if self.tournament_size < 1 or self.generations < 0 or self.restarts < 1:
            raise ValueError("tournament_size, restarts >= 1 and generations >= 0 required")


@dataclass
class CompilationResult:
    braidword: Braidword
    matrix: np.ndarray
    fitness: float
    metrics: dict
    admissible: bool
    engine: str
    seed: int
    evaluations: int
    generation_of_best: int = 0
    history: list = field(default_factory=list)
    wall_time: float = 0.0

    @classmethod
    def build(cls, word: Braidword, model: AnyonModel, cfg: SearchConfig, **stats) -> "CompilationResult":
        """Recompute the matrix and metrics of ``word`` from scratch."""
        mat = evaluate(word, model)
        if cfg.fitness == "distance":
            d = phase_invariant_distance(cfg.target, mat)
            metrics, cost, ok = {"distance": d}, d, True
        else:
            rep = TwoQubitReport.from_matrix(mat, word.to_text(), model.level, cfg.scheme, cfg.du_method)
            metrics = {"d_cnot": rep.d_cnot, "d_u": rep.d_u, "m11": rep.m11, "g1": rep.g1, "g2": rep.g2, "g3": rep.g3}
            ok = rep.admissible(cfg.u_max, cfg.m_min)
            cost = rep.d_cnot if ok else INADMISSIBLE + _violation(rep.d_u, rep.m11, cfg)
        return cls(word, mat, float(cost), metrics, bool(ok), **stats)

    def report(self, k: int) -> TwoQubitReport:
        m = self.metrics
        return TwoQubitReport(self.braidword.to_text(), k, self.braidword.scheme, m["d_cnot"], m["d_u"], m["m11"], m["g1"], m["g2"], m["g3"])

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "braidword": self.braidword.to_text(),
            "n_qubits": self.braidword.n_qubits,
            "scheme": self.braidword.scheme,
            "length": len(self.braidword),
            "fitness": self.fitness,
            "metrics": self.metrics,
            "admissible": self.admissible,
            "engine": self.engine,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "generation_of_best": self.generation_of_best,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        """JSON record; wall time is left out by default so equal seeds give equal text."""
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _violation(d_u, m11, cfg: SearchConfig):
    return np.maximum(d_u - cfg.u_max, 0.0) + np.maximum(cfg.m_min - m11, 0.0)


def cost_function(cfg: SearchConfig) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised cost over a stack of realised matrices."""
    if cfg.fitness == "distance":
        target = np.asarray(cfg.target, dtype=complex)
        return lambda mats: np.atleast_1d(phase_invariant_distance(target, mats))

    def cnot_cost(mats):
        dc, du, m11 = two_qubit_costs(mats, cfg.du_method)
        ok = (du < cfg.u_max) & (m11 > cfg.m_min)
        return np.where(ok, dc, INADMISSIBLE + _violation(du, m11, cfg))

    return cnot_cost


def has_inverse_pair(words: np.ndarray, n_qubits: int) -> np.ndarray:
    inv = inverse_letter_indices(n_qubits)
    if words.shape[1] < 2:
        return np.zeros(len(words), dtype=bool)
    return (inv[words[:, :-1]] == words[:, 1:]).any(axis=1)


def _all_words(n_letters: int, length: int) -> np.ndarray:
    grid = np.indices((n_letters,) * length).reshape(length, -1).T
    return grid.astype(np.int64)


# --- brute force ----------------------------------------------------------------


def brute_force_search(
    cfg: SearchConfig,
    model: AnyonModel,
    prune_inverse_pairs: bool = False,
    max_evaluations: float = 1e9,
    chunk: int = 200_000,
) -> CompilationResult:
    """Exhaustive search over all words of exactly ``cfg.length`` letters.

    Words are enumerated in lexicographic index order and the first word
    attaining the minimum cost wins, so the result is deterministic.
    """
    t0 = time.perf_counter()
    mats = letter_matrices(model, cfg.n_qubits, cfg.scheme)
    n = len(mats)
    L = cfg.length
    total = n**L
    if total > max_evaluations:
        raise BudgetExceededError(f"{n}^{L} = {total:.3g} words exceeds the cap {max_evaluations:.3g}")
    cost_of = cost_function(cfg)
    dim = mats.shape[1]

    if L == 0:
        word = Braidword("", cfg.n_qubits, cfg.scheme)
        res = CompilationResult.build(word, model, cfg, engine="bf", seed=cfg.rng_seed, evaluations=1)
        if not res.admissible:
            raise NoAdmissibleWordError("the empty word violates the two-qubit constraints")
        res.wall_time = time.perf_counter() - t0
        return res

    # split each word as prefix + suffix; suffix products are tabulated once
    s_len = 1
    while s_len < L and n ** (s_len + 1) <= 10_000:
        s_len += 1
    p_len = L - s_len
    suffixes = _all_words(n, s_len)
    s_mats = evaluate_batch(suffixes, mats)
    per_chunk = max(1, chunk // len(suffixes))

    best_cost, best_word, evaluations = np.inf, None, 0
    n_prefix = n**p_len
    for start in range(0, n_prefix, per_chunk):
        ids = np.arange(start, min(start + per_chunk, n_prefix))
        prefixes = np.stack(np.unravel_index(ids, (n,) * p_len), axis=1) if p_len else np.zeros((1, 0), np.int64)
        p_mats = evaluate_batch(prefixes, mats) if p_len else np.eye(dim, dtype=complex)[None]
        # leftmost letter acts first: word matrix = suffix @ prefix
        prods = (s_mats[None, :] @ p_mats[:, None]).reshape(-1, dim, dim)
        costs = cost_of(prods)
        evaluations += len(costs)
        if prune_inverse_pairs:
            words = np.concatenate(
                [np.repeat(prefixes, len(suffixes), axis=0), np.tile(suffixes, (len(prefixes), 1))], axis=1
            )
            costs = np.where(has_inverse_pair(words, cfg.n_qubits), np.inf, costs)
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_cost = costs[j]
            best_word = np.concatenate([prefixes[j // len(suffixes)], suffixes[j % len(suffixes)]])

    if best_word is None or best_cost >= INADMISSIBLE:
        raise NoAdmissibleWordError(f"no admissible word of length {L}")
    word = Braidword.from_indices(best_word, cfg.n_qubits, cfg.scheme)
    res = CompilationResult.build(word, model, cfg, engine="bf", seed=cfg.rng_seed, evaluations=evaluations)
    res.wall_time = time.perf_counter() - t0
    return res


# --- genetic algorithm -------------------------------------------------------------


def _collapse_pairs(pop: np.ndarray, n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Remove adjacent letter/inverse pairs and pad back to full length with random letters."""
    inv = inverse_letter_indices(n_qubits)
    n, L = pop.shape
    # one stack per row, advanced a column at a time
    out = np.zeros_like(pop)
    ptr = np.zeros(n, dtype=np.int64)
    rows = np.arange(n)
    for t in range(L):
        tok = pop[:, t]
        top = out[rows, np.maximum(ptr - 1, 0)]
        cancel = (ptr > 0) & (inv[top] == tok)
        keep = ~cancel
        out[rows[keep], ptr[keep]] = tok[keep]
        ptr = np.where(cancel, ptr - 1, ptr + 1)
    pad = np.arange(L)[None, :] >= ptr[:, None]
    return np.where(pad, rng.integers(0, len(inv), (n, L)), out)


def _replace_duplicates(pop: np.ndarray, start: int, n_letters: int, rng) -> None:
    """Resample every repeated word at index >= start (in place)."""
    _, first = np.unique(pop, axis=0, return_index=True)
    dup = np.ones(len(pop), dtype=bool)
    dup[first] = False
    dup[:start] = False
    if dup.any():
        pop[dup] = rng.integers(0, n_letters, (int(dup.sum()), pop.shape[1]))


def _ga_run(cfg: SearchConfig, gcfg: GAConfig, evaluator, cost_of, rng: np.random.Generator):
    n_letters = len(evaluator.mats)
    P, L = gcfg.population_size, cfg.length
    pop = rng.integers(0, n_letters, (P, L))
    if not gcfg.no_simplify_identity_pairs:
        pop = _collapse_pairs(pop, cfg.n_qubits, rng)
    cost = cost_of(evaluator(pop))
    evaluations = P
    history = []
    best_gen = 0
    best_cost = float(cost.min())
    best_word = pop[int(np.argmin(cost))].copy()
    history.append(best_cost)
    n_children = P - gcfg.elitism_count

    for gen in range(1, gcfg.generations + 1):
        if gcfg.stop_cost is not None and best_cost <= gcfg.stop_cost:
            break
        order = np.argsort(cost, kind="stable")
        elite = pop[order[: gcfg.elitism_count]]
        elite_cost = cost[order[: gcfg.elitism_count]]
        if n_children > 0:
            # tournament selection: two parents per child
            cand = rng.integers(0, P, (2, n_children, gcfg.tournament_size))
            winners = np.take_along_axis(cand, np.argmin(cost[cand], axis=-1)[..., None], axis=-1)[..., 0]
            ma, pa = pop[winners[0]], pop[winners[1]]
            cut = rng.integers(1, L, n_children) if L > 1 else np.ones(n_children, dtype=np.int64)
            do_cross = rng.random(n_children) < gcfg.crossover_rate
            take_pa = (np.arange(L)[None, :] >= cut[:, None]) & do_cross[:, None]
            kids = np.where(take_pa, pa, ma)
            mutate = rng.random((n_children, L)) < gcfg.mutation_rate
            kids = np.where(mutate, rng.integers(0, n_letters, (n_children, L)), kids)
            if not gcfg.no_simplify_identity_pairs:
                kids = _collapse_pairs(kids, cfg.n_qubits, rng)
            pop = np.concatenate([elite, kids])
            if gcfg.replace_duplicates:
                # duplicates carry no new information; swap them for random immigrants
                _replace_duplicates(pop, gcfg.elitism_count, n_letters, rng)
            kid_cost = cost_of(evaluator(pop[gcfg.elitism_count :]))
            evaluations += n_children
            cost = np.concatenate([elite_cost, kid_cost])
        j = int(np.argmin(cost))
        if cost[j] < best_cost:
            best_cost, best_word, best_gen = float(cost[j]), pop[j].copy(), gen
        history.append(best_cost)
    return best_cost, best_word, best_gen, history, evaluations


def ga_search(cfg: SearchConfig, gcfg: GAConfig, model: AnyonModel) -> CompilationResult:
    """Tournament GA with elitism over fixed-length words, best over all restarts.

    Each restart draws from its own child of ``SeedSequence(cfg.rng_seed)``,
    so results depend only on the configs.
    """
    if cfg.length < 1:
        raise ValueError("GA needs length >= 1")
    t0 = time.perf_counter()
    evaluator = BlockEvaluator(letter_matrices(model, cfg.n_qubits, cfg.scheme))
    cost_of = cost_function(cfg)
    best = None
    total_evals = 0
    for seq in np.random.SeedSequence(cfg.rng_seed).spawn(gcfg.restarts):
        run = _ga_run(cfg, gcfg, evaluator, cost_of, np.random.default_rng(seq))
        total_evals += run[4]
        if best is None or run[0] < best[0]:
            best = run
        if gcfg.stop_cost is not None and best[0] <= gcfg.stop_cost:
            break
    _, word_idx, gen, history, _ = best
    word = Braidword.from_indices(word_idx, cfg.n_qubits, cfg.scheme)
    res = CompilationResult.build(
        word, model, cfg, engine="ga", seed=cfg.rng_seed, evaluations=total_evals,
        generation_of_best=gen, history=history,
    )
    res.wall_time = time.perf_counter() - t0
    return res


# --- run configs ---------------------------------------------------------------------


def _coerce(raw: str, kind):
    raw = raw.strip()
    if kind is bool or kind == "bool":
        return raw.lower() in ("1", "true", "yes", "on")
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def load_run_config(path: str | Path) -> tuple[dict, GAConfig]:
    """Read a ``key = value`` file into (search kwargs, GAConfig).

    Blank lines and ``#`` comments are ignored.  Keys belonging to GAConfig go
    there; everything else (k, gate, n_qubits, scheme, length, ...) is
    returned as a plain dict for the caller to interpret.
    """
    ga_fields = {f.name: f.type for f in fields(GAConfig)}
    search, ga = {}, {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in ga_fields:
            ga[key] = _coerce(value, bool if key == "no_simplify_identity_pairs" else None)
        else:
            search[key] = _coerce(value, None)
    return search, GAConfig(**ga)


def append_jsonl(path: str | Path, record: dict | CompilationResult) -> None:
    if isinstance(record, CompilationResult):
        record = record.to_dict()
    with open(path, "a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
