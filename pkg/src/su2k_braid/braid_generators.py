"""Elementary and double elementary braiding matrices, braidwords and their evaluation.

Single-qubit space: three qubit anyons x, basis (|0>, |1>) = first pair fused
to (vacuum, 2).  Two-qubit space: six anyons, basis order
(|NC>, |00>, |01>, |10>, |11>) where |c1 c2> records the fusion channels of
anyon pairs (1, 2) and (5, 6) and |NC> is the non-computational state with
c1 = c2 = 2 and the two triples fused to a charge other than x.

Composition order: the leftmost letter of a braidword acts first, i.e. it is
the rightmost factor of the matrix product.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .anyon_model import AnyonModel

ONE_QUBIT_LETTERS = "ABCD"
TWO_QUBIT_LETTERS = "ABCDEFGHIJ"
SCHEMES = ("single", "double")
NC = 0  # index of |NC> in the two-qubit basis


class BraidwordError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorToken:
    index: int
    orientation: int  # +1 or -1
    scheme: str = "double"

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise BraidwordError(f"orientation must be +1 or -1, got {self.orientation}")
        if self.scheme not in SCHEMES:
            raise BraidwordError(f"unknown scheme {self.scheme!r}")
        if self.index < 1:
            raise BraidwordError(f"generator index must be >= 1, got {self.index}")


def alphabet(n_qubits: int) -> str:
    if n_qubits == 1:
        return ONE_QUBIT_LETTERS
    if n_qubits == 2:
        return TWO_QUBIT_LETTERS
    raise BraidwordError(f"only 1- and 2-qubit encodings exist, got {n_qubits}")


def n_generators(n_qubits: int) -> int:
    return len(alphabet(n_qubits)) // 2


def inverse_letter_indices(n_qubits: int) -> np.ndarray:
    """inv[j] is the alphabet index of the inverse of letter j."""
    g = n_generators(n_qubits)
    return np.concatenate([np.arange(g, 2 * g), np.arange(g)])


@dataclass(frozen=True)
class Braidword:
    """A word over the Table I (one qubit) or Table II (two qubit) letter alphabet.

    Letters ``A..`` in the first half of the alphabet are the positive
    generators sigma_1, sigma_2, ...; the second half are their inverses.
    For ``scheme="double"`` each letter stands for a squared generator.
    """

    letters: str = ""
    n_qubits: int = 1
    scheme: str = "double"

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise BraidwordError(f"unknown scheme {self.scheme!r}")
        alpha = alphabet(self.n_qubits)
        bad = set(self.letters) - set(alpha)
        if bad:
            raise BraidwordError(f"letters {sorted(bad)} not in alphabet {alpha}")

    @classmethod
    def from_indices(cls, indices, n_qubits: int = 1, scheme: str = "double") -> "Braidword":
        alpha = alphabet(n_qubits)
        return cls("".join(alpha[int(i)] for i in indices), n_qubits, scheme)

    @classmethod
    def parse(cls, text: str, n_qubits: int | None = None) -> "Braidword":
        """Parse ``"ABCD"`` or ``"scheme=single:ABCD"``; arity inferred from letters if not given."""
        text = text.strip()
        scheme = "double"
        if text.startswith("scheme="):
            head, _, text = text.partition(":")
            scheme = head.split("=", 1)[1].strip()
        if n_qubits is None:
            n_qubits = 2 if set(text) - set(ONE_QUBIT_LETTERS) else 1
        return cls(text, n_qubits, scheme)

    def to_text(self) -> str:
        if self.scheme == "single":
            return f"scheme=single:{self.letters}"
        return self.letters

    @property
    def indices(self) -> np.ndarray:
        alpha = alphabet(self.n_qubits)
        return np.array([alpha.index(c) for c in self.letters], dtype=np.int64)

    @property
    def tokens(self) -> list[GeneratorToken]:
        g = n_generators(self.n_qubits)
        return [
            GeneratorToken(int(j % g) + 1, 1 if j < g else -1, self.scheme) for j in self.indices
        ]

    def inverse(self) -> "Braidword":
        inv = inverse_letter_indices(self.n_qubits)
        return Braidword.from_indices(inv[self.indices[::-1]], self.n_qubits, self.scheme)

    def __add__(self, other: "Braidword") -> "Braidword":
        if (self.n_qubits, self.scheme) != (other.n_qubits, other.scheme):
            raise BraidwordError("cannot concatenate words of different arity or scheme")
        return Braidword(self.letters + other.letters, self.n_qubits, self.scheme)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.to_text()


def simplify(word: Braidword) -> Braidword:
    """Cancel adjacent letter/inverse pairs until none remain."""
    inv = inverse_letter_indices(word.n_qubits)
    stack: list[int] = []
    for j in word.indices:
        if stack and inv[stack[-1]] == j:
            stack.pop()
        else:
            stack.append(int(j))
    return Braidword.from_indices(stack, word.n_qubits, word.scheme)


# --- generator matrices -------------------------------------------------------


def _qubit_blocks(model: AnyonModel, power: int) -> tuple[np.ndarray, np.ndarray]:
    """(sigma_1^p, sigma_2^p) on the 3-anyon qubit, built from R^p and the F-move."""
    x = model.qubit_anyon
    d = np.diag([model.r_symbol(x, x, 0) ** power, model.r_symbol(x, x, 2) ** power])
    F = model.f_matrix(x, x, x, x).matrix
    return d, F @ d @ np.linalg.inv(F)


def single_qubit_ebm(i: int, model: AnyonModel) -> np.ndarray:
    if i not in (1, 2):
        raise BraidwordError(f"single-qubit generators are sigma_1, sigma_2; got {i}")
    return _qubit_blocks(model, 1)[i - 1]


def single_qubit_debm(i: int, model: AnyonModel) -> np.ndarray:
    """Double braid built directly from squared R-symbols (not by squaring the EBM)."""
    if i not in (1, 2):
        raise BraidwordError(f"single-qubit generators are sigma_1, sigma_2; got {i}")
    return _qubit_blocks(model, 2)[i - 1]


def _middle_block(model: AnyonModel, power: int) -> np.ndarray:
    """sigma_3^p restricted to span(|NC>, |11>).

    With both outer pairs in channel 2, anyons 3 and 4 sit in the tree
    ((2 x)_y x)_2; y = x is |11> and the other channel is |NC>.
    """
    x = model.qubit_anyon
    fm = model.f_matrix(2, x, x, 2)
    nc = next(y for y in fm.rows if y != x)
    order = [fm.rows.index(nc), fm.rows.index(x)]
    G = fm.matrix[order]
    d = np.diag([model.r_symbol(x, x, e) ** power for e in fm.cols])
    return G @ d @ np.linalg.inv(G)


def _two_qubit_set(model: AnyonModel, power: int) -> list[np.ndarray]:
    x = model.qubit_anyon
    r0 = model.r_symbol(x, x, 0) ** power
    r2 = model.r_symbol(x, x, 2) ** power
    s1, s2 = _qubit_blocks(model, power)
    eye = np.eye(2)

    def embed(nc_phase, comp):
        m = np.zeros((5, 5), dtype=complex)
        m[NC, NC] = nc_phase
        m[1:, 1:] = comp
        return m

    s3 = np.zeros((5, 5), dtype=complex)
    s3[1, 1], s3[2, 2], s3[3, 3] = r0, r2, r2
    s3[np.ix_([NC, 4], [NC, 4])] = _middle_block(model, power)
    return [
        embed(r2, np.kron(s1, eye)),
        embed(r2, np.kron(s2, eye)),
        s3,
        embed(r2, np.kron(eye, s2)),
        embed(r2, np.kron(eye, s1)),
    ]


def two_qubit_ebm(i: int, model: AnyonModel) -> np.ndarray:
    if not 1 <= i <= 5:
        raise BraidwordError(f"two-qubit generators are sigma_1..sigma_5; got {i}")
    return _two_qubit_set(model, 1)[i - 1]


def two_qubit_debm(i: int, model: AnyonModel) -> np.ndarray:
    if not 1 <= i <= 5:
        raise BraidwordError(f"two-qubit generators are sigma_1..sigma_5; got {i}")
    return _two_qubit_set(model, 2)[i - 1]


@lru_cache(maxsize=64)
def _letter_stack(model: AnyonModel, n_qubits: int, scheme: str) -> np.ndarray:
    power = 2 if scheme == "double" else 1
    if n_qubits == 1:
        gens = list(_qubit_blocks(model, power))
    else:
        gens = _two_qubit_set(model, power)
    stack = np.array(gens + [g.conj().T for g in gens])
    stack.setflags(write=False)
    return stack


def letter_matrices(model: AnyonModel, n_qubits: int, scheme: str = "double") -> np.ndarray:
    """Read-only array ``(len(alphabet), d, d)`` of the matrices behind each letter."""
    alphabet(n_qubits)
    if scheme not in SCHEMES:
        raise BraidwordError(f"unknown scheme {scheme!r}")
    return _letter_stack(model, n_qubits, scheme)


def evaluate(word: Braidword, model: AnyonModel) -> np.ndarray:
    """Matrix of a braidword; the empty word gives the identity."""
    mats = letter_matrices(model, word.n_qubits, word.scheme)
    out = np.eye(mats.shape[1], dtype=complex)
    for j in word.indices:
        out = mats[j] @ out
    return out


def evaluate_batch(indices: np.ndarray, mats: np.ndarray) -> np.ndarray:
    """Products for a batch of equal-length index words, shape ``(n, d, d)``."""
    indices = np.atleast_2d(indices)
    n, length = indices.shape
    out = np.broadcast_to(np.eye(mats.shape[1], dtype=complex), (n,) + mats.shape[1:]).copy()
    for t in range(length):
        out = mats[indices[:, t]] @ out
    return out


class BlockEvaluator:
    """Batched word evaluation through a table of all b-letter block products.

    A word of length L costs ceil(L/b) table lookups and as many matrix
    products instead of L.  ``block`` defaults to the largest b with at most
    ``max_table`` entries.
    """

    def __init__(self, mats: np.ndarray, block: int | None = None, max_table: int = 1024):
        self.mats = mats
        n = len(mats)
        if block is None:
            block = 1
            while n ** (block + 1) <= max_table:
                block += 1
        self.block = block
        words = np.indices((n,) * block).reshape(block, -1).T
        self.table = evaluate_batch(words, mats)
        self.radix = n ** np.arange(block - 1, -1, -1)

    def __call__(self, indices: np.ndarray) -> np.ndarray:
        indices = np.atleast_2d(indices)
        n, length = indices.shape
        full = length - length % self.block
        codes = indices[:, :full].reshape(n, -1, self.block) @ self.radix
        out = np.broadcast_to(np.eye(self.mats.shape[1], dtype=complex), (n,) + self.mats.shape[1:])
        if codes.shape[1]:
            out = self.table[codes[:, 0]]
            for j in range(1, codes.shape[1]):
                out = self.table[codes[:, j]] @ out
        if full < length:
            out = evaluate_batch(indices[:, full:], self.mats) @ out
        return np.array(out)
