"""SU(2)_k fusion data: fusion rules, quantum integers, R-symbols and F-matrices.

Labels are integers equal to twice the topological spin (0 is the vacuum,
1 is spin-1/2, 2 is spin-1, ...).  F-matrices come from the q-deformed
Racah formula with q = exp(i pi / (k + 2)); R-symbols use the standard
ribbon convention.  Only multiplicity-free fusion occurs for SU(2)_k, so every
F-symbol is a plain complex number.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import pi, sin, sqrt
from typing import NamedTuple

import numpy as np

SUPPORTED_LEVELS = (3, 5, 6, 7)


class ModelError(ValueError):
    """Invalid anyon label, fusion channel or model level."""


class FMatrix(NamedTuple):
    """A recoupling block ``[F^{abc}_d]`` with its row (e) and column (f) labels."""

    matrix: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]


class ConsistencyReport(NamedTuple):
    pentagon: float
    hexagon: float
    unitarity: float

    def max(self) -> float:
        return max(self.pentagon, self.hexagon, self.unitarity)


def quantum_integer(n: int, k: int) -> float:
    """[n]_q = sin(n pi/(k+2)) / sin(pi/(k+2))."""
    if n < 0:
        raise ModelError(f"quantum integer needs n >= 0, got {n}")
    if k < 1:
        raise ModelError(f"level must be positive, got {k}")
    theta = pi / (k + 2)
    return sin(n * theta) / sin(theta)


def _qfactorial(n: int, k: int) -> float:
    out = 1.0
    for i in range(1, n + 1):
        out *= quantum_integer(i, k)
    return out


def admissible(a: int, b: int, c: int, k: int) -> bool:
    """True if c appears in a x b at level k (twice-spin labels)."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= min(a + b, 2 * k - a - b)


def _triangle(a: int, b: int, c: int, k: int) -> float:
    num = (
        _qfactorial((a + b - c) // 2, k)
        * _qfactorial((a - b + c) // 2, k)
        * _qfactorial((-a + b + c) // 2, k)
    )
    return sqrt(num / _qfactorial((a + b + c) // 2 + 1, k))


def q_racah_6j(a: int, b: int, e: int, c: int, d: int, f: int, k: int) -> float:
    """Quantum 6j symbol {a b e; c d f}_q in twice-spin labels (Racah sum)."""
    triads = ((a, b, e), (c, d, e), (a, d, f), (c, b, f))
    if not all(admissible(x, y, z, k) for x, y, z in triads):
        return 0.0
    t = [sum(tr) // 2 for tr in triads]
    p = ((a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2)
    total = 0.0
    for z in range(max(t), min(p) + 1):
        den = 1.0
        for ti in t:
            den *= _qfactorial(z - ti, k)
        for pj in p:
            den *= _qfactorial(pj - z, k)
        total += (-1) ** z * _qfactorial(z + 1, k) / den
    return total * np.prod([_triangle(*tr, k) for tr in triads])


@dataclass(frozen=True)
class AnyonModel:
    """Immutable SU(2)_k model for one of the braiding-universal levels.

    ``gauge`` selects the vertex gauge of the F-symbols: ``"racah"`` keeps the
    q-Racah values untouched, ``"flipped"`` multiplies the vertex
    (x, x -> 2) of the qubit anyon x by -1, which reverses the sign of the
    off-diagonal entries of ``F^{xxx}_x``.  R-symbols of identical anyons are
    unaffected by either choice.
    """

    level: int
    gauge: str = "racah"
    r_overrides: tuple[tuple[tuple[int, int, int], complex], ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        k = self.level
        if k in (2, 4):
            raise ModelError(
                f"SU(2)_{k}: braiding non-universal (braiding alone cannot "
                "produce a universal gate set at this level)"
            )
        if k < 3:
            raise ModelError(f"SU(2)_{k} is not supported; need k >= 3")
        if self.gauge not in ("racah", "flipped"):
            raise ModelError(f"unknown gauge {self.gauge!r}")

    @property
    def deformation_angle(self) -> float:
        return pi / (self.level + 2)

    @property
    def qubit_anyon(self) -> int:
        # SU(2)_3 restricts to the Fibonacci subcategory {0, 2}
        return 2 if self.level == 3 else 1

    @property
    def labels(self) -> range:
        return range(self.level + 1)

    def check_label(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a <= self.level:
            raise ModelError(f"label {a!r} outside [0, {self.level}]")
        return int(a)

    def fusion_channels(self, a: int, b: int) -> list[int]:
        a, b = self.check_label(a), self.check_label(b)
        k = self.level
        return list(range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2))

    def _vertex(self, a: int, b: int, c: int) -> int:
        x = self.qubit_anyon
        if self.gauge == "flipped" and (a, b, c) == (x, x, 2):
            return -1
        return 1

    @cached_property
    def r_table(self) -> dict[tuple[int, int, int], complex]:
        k = self.level
        table = {}
        for a, b in itertools.product(self.labels, repeat=2):
            for c in self.fusion_channels(a, b):
                phase = (c * (c + 2) - a * (a + 2) - b * (b + 2)) / (4 * (k + 2))
                r = (-1) ** ((a + b - c) // 2) * np.exp(1j * pi * phase)
                r *= self._vertex(b, a, c) / self._vertex(a, b, c)
                table[(a, b, c)] = complex(r)
        table.update(dict(self.r_overrides))
        return table

    @cached_property
    def f_table(self) -> dict[tuple[int, int, int, int, int, int], complex]:
        k = self.level
        table = {}
        u = self._vertex
        for a, b, c in itertools.product(self.labels, repeat=3):
            for e in self.fusion_channels(a, b):
                for d in self.fusion_channels(e, c):
                    for f in self.fusion_channels(b, c):
                        if not admissible(a, f, d, k):
                            continue
                        val = (-1) ** ((a + b + c + d) // 2) * sqrt(
                            quantum_integer(e + 1, k) * quantum_integer(f + 1, k)
                        ) * q_racah_6j(a, b, e, c, d, f, k)
                        val *= u(a, b, e) * u(e, c, d) / (u(b, c, f) * u(a, f, d))
                        table[(a, b, c, d, e, f)] = complex(val)
        return table

    def r_symbol(self, a: int, b: int, c: int) -> complex:
        try:
            return self.r_table[(a, b, c)]
        except KeyError:
            raise ModelError(f"{c} is not a fusion channel of {a} x {b} at k={self.level}") from None

    def f_symbol(self, a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
        return self.f_table.get((a, b, c, d, e, f), 0.0)

    def f_matrix(self, a: int, b: int, c: int, d: int) -> FMatrix:
        for lab in (a, b, c, d):
            self.check_label(lab)
        k = self.level
        rows = tuple(e for e in self.fusion_channels(a, b) if admissible(e, c, d, k))
        cols = tuple(f for f in self.fusion_channels(b, c) if admissible(a, f, d, k))
        if not rows or not cols:
            raise ModelError(f"no admissible channels for F^{{{a}{b}{c}}}_{d} at k={k}")
        mat = np.array([[self.f_symbol(a, b, c, d, e, f) for f in cols] for e in rows])
        return FMatrix(mat, rows, cols)

    def with_r_override(self, key: tuple[int, int, int], value: complex) -> "AnyonModel":
        """Copy of the model with one R-symbol replaced (used for fault injection)."""
        return AnyonModel(self.level, self.gauge, self.r_overrides + ((key, complex(value)),))

    def to_json(self) -> str:
        def pack(table):
            return {",".join(map(str, key)): [v.real, v.imag] for key, v in table.items()}

        return json.dumps(
            {"k": self.level, "gauge": self.gauge, "F": pack(self.f_table), "R": pack(self.r_table)},
            indent=1,
        )


def fusion_channels(a: int, b: int, model: AnyonModel) -> list[int]:
    return model.fusion_channels(a, b)


def r_symbol(a: int, b: int, c: int, model: AnyonModel) -> complex:
    return model.r_symbol(a, b, c)


def f_matrix(a: int, b: int, c: int, d: int, model: AnyonModel) -> FMatrix:
    return model.f_matrix(a, b, c, d)


def _pentagon_residual(m: AnyonModel) -> float:
    F = m.f_symbol
    fus = m.fusion_channels
    worst = 0.0
    for a, b, c, d in itertools.product(m.labels, repeat=4):
        for f in fus(a, b):
            for g in fus(f, c):
                for e in fus(g, d):
                    for l in fus(c, d):
                        for k_ in fus(b, l):
                            lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k_)
                            rhs = sum(
                                F(a, b, c, g, f, h) * F(a, h, d, e, g, k_) * F(b, c, d, k_, h, l)
                                for h in fus(b, c)
                            )
                            worst = max(worst, abs(lhs - rhs))
    return worst


def _hexagon_residual(m: AnyonModel) -> float:
    F, R = m.f_symbol, m.r_table
    fus = m.fusion_channels
    worst = 0.0
    for a, b, c in itertools.product(m.labels, repeat=3):
        for e in fus(c, a):
            for d in fus(e, b):
                for g in fus(c, b):
                    if d not in fus(a, g):
                        continue
                    for sign in (1, -1):
                        Rs = (lambda x, y, z: R[(x, y, z)]) if sign == 1 else (
                            lambda x, y, z: 1 / R[(y, x, z)]
                        )
                        lhs = Rs(c, a, e) * F(a, c, b, d, e, g) * Rs(c, b, g)
                        rhs = sum(
                            F(c, a, b, d, e, f) * Rs(c, f, d) * F(a, b, c, d, f, g)
                            for f in fus(a, b)
                            if admissible(c, f, d, m.level)
                        )
                        worst = max(worst, abs(lhs - rhs))
    return worst


def _unitarity_residual(m: AnyonModel) -> float:
    worst = 0.0
    for a, b, c, d in itertools.product(m.labels, repeat=4):
        try:
            blk = m.f_matrix(a, b, c, d).matrix
        except ModelError:
            continue
        if blk.shape[0] != blk.shape[1]:
            return float("inf")
        worst = max(worst, np.abs(blk @ blk.conj().T - np.eye(len(blk))).max())
    return worst


def verify_consistency(model: AnyonModel) -> ConsistencyReport:
    """Largest pentagon, hexagon (both chiralities) and F-unitarity residuals."""
    return ConsistencyReport(
        pentagon=_pentagon_residual(model),
        hexagon=_hexagon_residual(model),
        unitarity=_unitarity_residual(model),
    )
