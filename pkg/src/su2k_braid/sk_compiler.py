"""Solovay-Kitaev refinement of single-qubit braidwords.

Level 0 is a GA search at the base length.  Level n+1 corrects U_n with a
balanced group commutator: Delta = U U_n^dagger is split as V W V^dagger W^dagger
and V, W are themselves approximated at level n, giving
U_{n+1} = V_n W_n V_n^dagger W_n^dagger U_n and five times the word length.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import count

import numpy as np
from scipy.optimize import brentq

from .anyon_model import AnyonModel
from .braid_generators import Braidword, evaluate
from .gate_metrics import phase_invariant_distance
from .search_engines import GAConfig, SearchConfig, ga_search

PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)
# sin^2(phi/2) = 2^{-1/2} maximises the commutator angle (theta = pi)
PHI_MAX = 2 * np.arcsin(2**-0.25)


class SKError(ValueError):
    pass


def to_su2(u: np.ndarray) -> np.ndarray:
    """Strip the global phase: U / det(U)^{1/2} on the principal branch."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise SKError(f"expected a 2x2 matrix, got {u.shape}")
    if np.abs(u @ u.conj().T - np.eye(2)).max() > 1e-9:
        raise SKError("input is not unitary")
    return u / np.sqrt(np.linalg.det(u))


def rotation(axis: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i angle/2 n.sigma) for a unit vector n."""
    n = np.asarray(axis, dtype=float)
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * np.einsum("i,ijk->jk", n, PAULI)


def axis_angle(u: np.ndarray) -> tuple[np.ndarray, float]:
    """Axis and angle in [0, 2 pi] of an SU(2) element."""
    c = np.clip(np.trace(u).real / 2, -1.0, 1.0)
    theta = 2 * np.arccos(c)
    v = np.array([-np.trace(p @ u).imag / 2 for p in PAULI])
    norm = np.linalg.norm(v)
    if norm < 1e-15:
        return np.array([0.0, 0.0, 1.0]), theta
    return v / norm, theta


def _align(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """SU(2) element whose rotation carries unit vector src onto dst."""
    cross = np.cross(src, dst)
    s, c = np.linalg.norm(cross), float(np.dot(src, dst))
    if s < 1e-14:
        if c > 0:
            return np.eye(2, dtype=complex)
        perp = np.cross(src, [1.0, 0.0, 0.0])
        if np.linalg.norm(perp) < 1e-8:
            perp = np.cross(src, [0.0, 1.0, 0.0])
        return rotation(perp / np.linalg.norm(perp), np.pi)
    return rotation(cross / s, np.arctan2(s, c))


def commutator_angle(phi: float) -> float:
    """sin(theta/2) for the commutator of two perpendicular phi-rotations."""
    s2 = np.sin(phi / 2) ** 2
    return 2 * s2 * np.sqrt(max(1 - s2 * s2, 0.0))


def gc_decompose(delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Balanced group commutator: V W V^dagger W^dagger = Delta.

    V and W rotate by the same angle phi about perpendicular axes; both are
    finally conjugated so the commutator axis lines up with that of Delta.
    """
    delta = np.asarray(delta, dtype=complex)
    if np.abs(np.linalg.det(delta) - 1) > 1e-9:
        raise SKError("Delta must lie in SU(2)")
    axis_d, theta = axis_angle(delta)
    if theta > np.pi + 1e-12:
        raise SKError(f"rotation angle {theta:.6g} > pi; pass the sign-fixed representative")
    theta = min(theta, np.pi)
    if theta < 1e-15:
        return np.eye(2, dtype=complex), np.eye(2, dtype=complex)
    target = np.sin(theta / 2)
    phi = brentq(lambda p: commutator_angle(p) - target, 0.0, PHI_MAX, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    v = rotation([1.0, 0.0, 0.0], phi)
    w = rotation([0.0, 1.0, 0.0], phi)
    axis_c, _ = axis_angle(v @ w @ v.conj().T @ w.conj().T)
    s = _align(axis_c, axis_d)
    return s @ v @ s.conj().T, s @ w @ s.conj().T


@dataclass(frozen=True)
class SKAConfig:
    base_length: int = 30
    max_level: int = 2
    scheme: str = "double"
    base_search: GAConfig = field(default_factory=lambda: GAConfig(generations=600, restarts=2))
    rng_seed: int = 0

    def __post_init__(self):
        if self.scheme == "double" and self.base_length % 2:
            raise SKError("base_length must be even for the double scheme")
        if not 0 <= self.max_level <= 3:
            raise SKError("max_level must lie in 0..3")

    @property
    def base_tokens(self) -> int:
        return self.base_length // 2 if self.scheme == "double" else self.base_length


@dataclass
class SKAResult:
    levels: list  # dicts {level, distance, token_count, braidword}
    braidword: Braidword
    matrix: np.ndarray

    @property
    def distance(self) -> float:
        return self.levels[-1]["distance"]

    @property
    def token_count(self) -> int:
        return len(self.braidword)

    def to_json(self) -> str:
        return json.dumps({"levels": self.levels, "braidword": self.braidword.to_text()}, sort_keys=True)


class _Compiler:
    def __init__(self, cfg: SKAConfig, model: AnyonModel):
        self.cfg, self.model = cfg, model
        self._calls = count()

    def base(self, u: np.ndarray) -> Braidword:
        seed = int(np.random.SeedSequence([self.cfg.rng_seed, next(self._calls)]).generate_state(1)[0])
        scfg = SearchConfig(
            n_qubits=1, scheme=self.cfg.scheme, length=self.cfg.base_tokens,
            fitness="distance", target=u, rng_seed=seed,
        )
        return ga_search(scfg, self.cfg.base_search, self.model).braidword

    def step(self, u: np.ndarray, prev: Braidword, level: int) -> Braidword:
        """Refine prev (a level-(level-1) word for u) by one level."""
        delta = to_su2(u) @ to_su2(evaluate(prev, self.model)).conj().T
        if np.trace(delta).real < 0:
            delta = -delta
        v, w = gc_decompose(delta)
        wv = self.approximate(v, level - 1)
        ww = self.approximate(w, level - 1)
        # leftmost acts first: V W V^dag W^dag U_prev
        return prev + ww.inverse() + wv.inverse() + ww + wv

    def approximate(self, u: np.ndarray, level: int) -> Braidword:
        word = self.base(u)
        for lvl in range(1, level + 1):
            word = self.step(u, word, lvl)
        return word


def ska_approximate(target: np.ndarray, cfg: SKAConfig, model: AnyonModel) -> SKAResult:
    target = np.asarray(target, dtype=complex)
    to_su2(target)
    comp = _Compiler(cfg, model)
    word = comp.base(target)
    levels = []
    for lvl in range(cfg.max_level + 1):
        if lvl:
            word = comp.step(target, word, lvl)
        mat = evaluate(word, model)
        levels.append({
            "level": lvl,
            "distance": phase_invariant_distance(target, mat),
            "token_count": len(word),
            "braidword": word.to_text(),
        })
    return SKAResult(levels, word, mat)
