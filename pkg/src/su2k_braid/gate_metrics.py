"""Distances and constraint functionals for compiled gates.

All functions accept a single matrix or a stack with leading batch axes;
scalar inputs give Python floats back.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

# magic (Bell) basis used for the local invariants
MAGIC = np.array(
    [[1, 1j, 0, 0], [0, 0, 1j, 1], [0, 0, 1j, -1], [1, -1j, 0, 0]], dtype=complex
) / np.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CNOT_INVARIANTS = (0.0, 0.0, 1.0)
DEGENERATE_DET = 1e-6


class MetricError(ValueError):
    pass


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def _check_shape(m: np.ndarray, n: int, name: str) -> np.ndarray:
    m = np.asarray(m)
    if m.shape[-2:] != (n, n):
        raise MetricError(f"{name} must be {n}x{n}, got {m.shape[-2:]}")
    return m


def phase_invariant_distance(u0: np.ndarray, u: np.ndarray):
    """sqrt(1 - |Tr(U0 U^dagger)| / 2).

    For unitaries this equals ||U0 - e^{i phi} U||_F / 2 at the best phase,
    which is what gets computed: the trace form loses half the digits to
    cancellation near zero.
    """
    u0 = _check_shape(u0, 2, "U0")
    u = _check_shape(u, 2, "U")
    s = np.einsum("...ij,...ij->...", u0, u.conj())
    mag = np.abs(s)
    phase = np.where(mag > 0, s / np.where(mag > 0, mag, 1), 1.0)
    diff = u0 - phase[..., None, None] * u
    return _scalar(np.sqrt(np.einsum("...ij,...ij->...", diff, diff.conj()).real) / 2)


def block_decompose(b: np.ndarray):
    """Split a 5x5 braid matrix into (M, A, leakage_max).

    M is the |NC> diagonal entry, A the 4x4 computational block and
    leakage_max the largest modulus among the eight off-block entries.
    """
    b = _check_shape(b, 5, "B")
    m = b[..., 0, 0]
    a = b[..., 1:, 1:]
    off = np.concatenate([b[..., 0, 1:], b[..., 1:, 0]], axis=-1)
    leak = np.abs(off).max(axis=-1)
    return (complex(m) if np.ndim(m) == 0 else m), a, _scalar(leak)


def assemble(m: complex, a: np.ndarray) -> np.ndarray:
    """Inverse of ``block_decompose`` for block-diagonal input: M (+) A."""
    a = _check_shape(a, 4, "A")
    out = np.zeros((5, 5), dtype=complex)
    out[0, 0] = m
    out[1:, 1:] = a
    return out


def unitarity_measure(a: np.ndarray, method: str = "elementwise"):
    """d^U of a 4x4 block with a = A^dagger A - I.

    ``"elementwise"`` takes Tr of the entrywise square root of a^dagger a,
    which is the sum of the column norms of a.  ``"nuclear"`` is Tr of the
    matrix square root, i.e. the sum of singular values of a.  Both vanish
    exactly when A is unitary.
    """
    a = _check_shape(a, 4, "A")
    dev = np.swapaxes(a.conj(), -1, -2) @ a - np.eye(4)
    if method == "elementwise":
        val = np.linalg.norm(dev, axis=-2).sum(axis=-1)
    elif method == "nuclear":
        val = np.linalg.svd(dev, compute_uv=False).sum(axis=-1)
    else:
        raise MetricError(f"unknown d^U method {method!r}")
    return _scalar(val)


def _complex_invariants(a: np.ndarray):
    a = _check_shape(a, 4, "A")
    det = np.linalg.det(a)
    if np.any(np.abs(det) < DEGENERATE_DET):
        raise MetricError("determinant too small to normalize local invariants")
    um = MAGIC.conj().T @ a @ MAGIC
    m = np.swapaxes(um, -1, -2) @ um
    tr = np.trace(m, axis1=-2, axis2=-1)
    tr_sq = np.trace(m @ m, axis1=-2, axis2=-1)
    g12 = tr**2 / (16 * det)
    g3 = (tr**2 - tr_sq) / (4 * det)
    return g12, g3


def makhlin_invariants(a: np.ndarray):
    """Local invariants (g1, g2, g3) of a two-qubit gate in the magic basis."""
    g12, g3 = _complex_invariants(a)
    if np.ndim(g12) == 0:
        return float(g12.real), float(g12.imag), float(g3.real)
    return np.stack([g12.real, g12.imag, g3.real], axis=-1)


def d_cnot(a: np.ndarray):
    """Squared distance of the invariants of A from those of CNOT.

    g3 is compared through its full complex value; for exactly unitary A its
    imaginary part vanishes and this is the plain sum of squared differences.
    """
    g12, g3 = _complex_invariants(a)
    return _scalar(g12.real**2 + g12.imag**2 + np.abs(g3 - 1.0) ** 2)


def two_qubit_costs(b: np.ndarray, du_method: str = "elementwise"):
    """(d_cnot, d_u, m11) for a stack of 5x5 matrices, without raising.

    Degenerate computational blocks get d_cnot = inf.
    """
    b = _check_shape(b, 5, "B")
    a = b[..., 1:, 1:]
    det = np.linalg.det(a)
    bad = np.abs(det) < DEGENERATE_DET
    safe = np.where(bad, 1.0, det)
    um = MAGIC.conj().T @ a @ MAGIC
    m = np.swapaxes(um, -1, -2) @ um
    tr = np.trace(m, axis1=-2, axis2=-1)
    tr_sq = np.trace(m @ m, axis1=-2, axis2=-1)
    g12 = tr**2 / (16 * safe)
    g3 = (tr**2 - tr_sq) / (4 * safe)
    dc = np.where(bad, np.inf, g12.real**2 + g12.imag**2 + np.abs(g3 - 1.0) ** 2)
    return dc, np.asarray(unitarity_measure(a, du_method)), np.abs(b[..., 0, 0])


@dataclass(frozen=True)
class TwoQubitReport:
    braidword: str
    k: int
    scheme: str
    d_cnot: float
    d_u: float
    m11: float
    g1: float
    g2: float
    g3: float

    @classmethod
    def from_matrix(cls, b: np.ndarray, braidword: str, k: int, scheme: str, du_method="elementwise"):
        m, a, _ = block_decompose(b)
        try:
            g1, g2, g3 = makhlin_invariants(a)
            dc = d_cnot(a)
        except MetricError:
            g1 = g2 = g3 = dc = float("nan")
        return cls(braidword, k, scheme, dc, unitarity_measure(a, du_method), abs(m), g1, g2, g3)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def admissible(self, u_max: float = 0.1, m_min: float = 0.99) -> bool:
        return self.d_u < u_max and self.m11 > m_min
