import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from su2k_braid.anyon_model import AnyonModel
from su2k_braid.braid_generators import Braidword, evaluate
from su2k_braid.mobility import MobilityError, mobility_schedule, schedule_to_word, schedule_unitary


def phase_equal(a, b, tol=1e-10):
    k = np.unravel_index(np.abs(b).argmax(), b.shape)
    ph = a[k] / b[k]
    return abs(abs(ph) - 1) < tol and np.abs(a - ph * b).max() < tol


def test_one_qubit_events():
    rep = mobility_schedule(Braidword("ABCD"))
    assert rep.mobile == {2}
    assert [(e["mobile"], e["around"], e["chirality"]) for e in rep.schedule] == [
        (2, 1, 1), (2, 3, 1), (2, 1, -1), (2, 3, -1)]


def test_two_qubit_mobile_set():
    rep = mobility_schedule(Braidword("ABCDEFGHIJ", 2))
    assert rep.mobile == {2, 3, 4}
    assert sum(e["step"] == 4 for e in rep.schedule) == 6


def test_single_scheme_rejected():
    with pytest.raises(MobilityError):
        mobility_schedule(Braidword("AB", 1, "single"))


words1 = st.text("ABCD", max_size=12)
words2 = st.text("ABCDEFGHIJ", max_size=8)


@given(words1)
def test_roundtrip_one_qubit(text):
    w = Braidword(text)
    assert schedule_to_word(mobility_schedule(w)).letters == text


@given(words2)
def test_roundtrip_two_qubit(text):
    w = Braidword(text, 2)
    assert schedule_to_word(mobility_schedule(w)).letters == text


@pytest.mark.parametrize("k", [3, 5, 7])
def test_schedule_unitary_matches(k):
    m = AnyonModel(k)
    rng = np.random.default_rng(k)
    for n, letters, size in ((1, "ABCD", 20), (2, "ABCDEFGHIJ", 15)):
        text = "".join(rng.choice(list(letters), size))
        w = Braidword(text, n)
        assert phase_equal(schedule_unitary(mobility_schedule(w), m), evaluate(w, m))


def test_table_two_word():
    m = AnyonModel(3)
    w = Braidword("CGGEBAHJHBIIGCI", 2)
    rep = mobility_schedule(w)
    assert phase_equal(schedule_unitary(rep, m), evaluate(w, m))
