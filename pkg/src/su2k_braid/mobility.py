"""Mobile-anyon schedules for double-braid words.

A double exchange of anyons i and i+1 is the same braid as one of them
winding once around the other, so each DEBM letter becomes an encircle event.
Anyons are numbered 1..n from the top.  One-qubit words move only anyon 2.
Two-qubit words move only anyons 2, 3 and 4: sigma_5^2 acts on the (5, 6)
channel, and because the six anyons fuse to the vacuum it equals, up to a
global phase, the full twist of anyons 1-4, which factors into loops of
anyons 2, 3, 4 around their lower-numbered neighbours.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .anyon_model import AnyonModel
from .braid_generators import Braidword, n_generators, single_qubit_ebm, two_qubit_ebm

# (mobile, around) loops realising the full twist of anyons 1..4, in order
FULL_TWIST_1_TO_4 = ((2, 1), (3, 2), (3, 1), (4, 3), (4, 2), (4, 1))


class MobilityError(ValueError):
    pass


@dataclass
class MobilityReport:
    braidword: str
    n_qubits: int
    mobile: set = field(default_factory=set)
    schedule: list = field(default_factory=list)  # dicts {step, mobile, around, chirality}

    def to_json(self) -> str:
        return json.dumps(
            {
                "braidword": self.braidword,
                "n_qubits": self.n_qubits,
                "mobile": sorted(self.mobile),
                "events": self.schedule,
            },
            indent=1,
        )


def _loops(index: int, n_qubits: int) -> tuple[tuple[int, int], ...]:
    if n_qubits == 1:
        return ((2, 1),) if index == 1 else ((2, 3),)
    table = {1: ((2, 1),), 2: ((2, 3),), 3: ((3, 4),), 4: ((4, 5),), 5: FULL_TWIST_1_TO_4}
    return table[index]


def mobility_schedule(word: Braidword) -> MobilityReport:
    if word.scheme != "double":
        raise MobilityError("mobility reduction holds only for double-braid words")
    events = []
    for step, tok in enumerate(word.tokens):
        loops = _loops(tok.index, word.n_qubits)
        # an inverse token undoes the loops in reverse order
        for mobile, around in loops if tok.orientation == 1 else loops[::-1]:
            events.append({"step": step, "mobile": mobile, "around": around, "chirality": tok.orientation})
    return MobilityReport(word.to_text(), word.n_qubits, {e["mobile"] for e in events}, events)


def schedule_to_word(report: MobilityReport) -> Braidword:
    """Recover the letter sequence from an event list (inverse of the relabeling)."""
    g = n_generators(report.n_qubits)
    by_step: dict[int, list] = {}
    for e in report.schedule:
        by_step.setdefault(e["step"], []).append(e)
    idx = []
    for step in sorted(by_step):
        evs = by_step[step]
        chir = {e["chirality"] for e in evs}
        if len(chir) != 1:
            raise MobilityError(f"mixed chirality at step {step}")
        orient = chir.pop()
        pairs = tuple((e["mobile"], e["around"]) for e in evs)[::orient]
        if pairs == FULL_TWIST_1_TO_4:
            gen = 5
        elif len(pairs) == 1:
            gen = min(pairs[0])
        else:
            raise MobilityError(f"unrecognised loop pattern at step {step}")
        idx.append(gen - 1 if orient == 1 else gen - 1 + g)
    return Braidword.from_indices(idx, report.n_qubits, "double")


def _loop_matrix(mobile: int, around: int, n_qubits: int, model: AnyonModel) -> np.ndarray:
    """Pure braid A_ij (i < j): anyon j winds once around anyon i."""
    i, j = sorted((mobile, around))
    ebm = single_qubit_ebm if n_qubits == 1 else two_qubit_ebm
    s = {m: ebm(m, model) for m in range(i, j)}
    conj = np.eye(len(s[i]), dtype=complex)
    for m in range(i + 1, j):
        conj = s[m] @ conj
    # sigma_{j-1}..sigma_{i+1} sigma_i^2 sigma_{i+1}^-1..sigma_{j-1}^-1
    return conj @ s[i] @ s[i] @ np.linalg.inv(conj)


def schedule_unitary(report: MobilityReport, model: AnyonModel) -> np.ndarray:
    """Matrix of the event sequence, equal to the word's matrix up to a global phase."""
    dim = 2 if report.n_qubits == 1 else 5
    out = np.eye(dim, dtype=complex)
    for e in report.schedule:
        a = _loop_matrix(e["mobile"], e["around"], report.n_qubits, model)
        out = (a if e["chirality"] == 1 else a.conj().T) @ out
    return out
