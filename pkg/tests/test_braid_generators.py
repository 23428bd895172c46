import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from su2k_braid.anyon_model import AnyonModel
from su2k_braid.braid_generators import (
    BlockEvaluator,
    Braidword,
    BraidwordError,
    GeneratorToken,
    evaluate,
    evaluate_batch,
    letter_matrices,
    simplify,
    single_qubit_debm,
    single_qubit_ebm,
    two_qubit_debm,
    two_qubit_ebm,
)
from su2k_braid.gate_metrics import phase_invariant_distance

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)

words1 = st.text(alphabet="ABCD", max_size=20)
words2 = st.text(alphabet="ABCDEFGHIJ", max_size=20)


def unitary_err(u):
    return np.abs(u @ u.conj().T - np.eye(len(u))).max()


def test_single_qubit_structure(model):
    s1, s2 = single_qubit_ebm(1, model), single_qubit_ebm(2, model)
    assert np.allclose(s1, np.diag(np.diag(s1)), atol=0)
    x = model.qubit_anyon
    assert np.allclose(np.diag(s1), [model.r_symbol(x, x, 0), model.r_symbol(x, x, 2)])
    assert unitary_err(s2) < 1e-12
    assert np.abs(s2 @ np.linalg.inv(s2) - np.eye(2)).max() < 1e-12


def test_single_qubit_braid_relation(model):
    s1, s2 = single_qubit_ebm(1, model), single_qubit_ebm(2, model)
    assert np.abs(s1 @ s2 @ s1 - s2 @ s1 @ s2).max() < 1e-12


def test_single_qubit_debm_paths_agree(model):
    for i in (1, 2):
        e = single_qubit_ebm(i, model)
        assert np.abs(e @ e - single_qubit_debm(i, model)).max() < 1e-12


def test_single_debm_diag_formula():
    m = AnyonModel(5)
    d = single_qubit_debm(1, m)
    assert np.allclose(np.diag(d), [m.r_symbol(1, 1, 0) ** 2, m.r_symbol(1, 1, 2) ** 2])
    F = m.f_matrix(1, 1, 1, 1).matrix
    Fi = np.linalg.inv(F)
    r0, r2 = m.r_symbol(1, 1, 0) ** 2, m.r_symbol(1, 1, 2) ** 2
    expected = F[0, 0] * r0 * Fi[0, 0] + F[0, 1] * r2 * Fi[1, 0]
    assert single_qubit_debm(2, m)[0, 0] == pytest.approx(expected)


def test_two_qubit_braid_relations(model):
    s = [two_qubit_ebm(i, model) for i in range(1, 6)]
    for i in range(4):
        assert np.abs(s[i] @ s[i + 1] @ s[i] - s[i + 1] @ s[i] @ s[i + 1]).max() < 1e-12
    for i in range(5):
        for j in range(i + 2, 5):
            assert np.abs(s[i] @ s[j] - s[j] @ s[i]).max() < 1e-12


def test_two_qubit_debm_is_square(model):
    for i in range(1, 6):
        e = two_qubit_ebm(i, model)
        d = two_qubit_debm(i, model)
        assert np.abs(e @ e - d).max() < 1e-12
        assert unitary_err(d) < 1e-12
        assert abs(abs(np.linalg.det(d)) - 1) < 1e-12
        assert abs(abs(np.linalg.det(e)) - 1) < 1e-12


def test_two_qubit_block_structure(model):
    for i in (1, 2, 4, 5):
        d = two_qubit_debm(i, model)
        assert np.all(d[0, 1:] == 0) and np.all(d[1:, 0] == 0)
    s3 = two_qubit_debm(3, model)
    mask = np.ones((5, 5), dtype=bool)
    mask[np.ix_([0, 4], [0, 4])] = False
    np.fill_diagonal(mask, False)
    assert np.all(s3[mask] == 0)
    assert abs(s3[0, 4]) > 1e-3


def test_two_qubit_debm_examples():
    m = AnyonModel(5)
    r0, r2 = m.r_symbol(1, 1, 0) ** 2, m.r_symbol(1, 1, 2) ** 2
    assert two_qubit_debm(1, m)[1, 1] == pytest.approx(r0)
    assert two_qubit_debm(3, m)[2, 2] == pytest.approx(r2)
    assert unitary_err(two_qubit_debm(3, AnyonModel(6))) < 1e-12


def test_generator_range_errors():
    m = AnyonModel(5)
    with pytest.raises(BraidwordError):
        single_qubit_ebm(3, m)
    with pytest.raises(BraidwordError):
        two_qubit_debm(0, m)
    with pytest.raises(BraidwordError):
        GeneratorToken(1, 0)


def test_empty_word_is_identity(model):
    assert np.allclose(evaluate(Braidword("", 1), model), np.eye(2))
    assert np.allclose(evaluate(Braidword("", 2), model), np.eye(5))


def test_letter_and_inverse_cancel(model):
    assert np.allclose(evaluate(Braidword("AC"), model), np.eye(2), atol=1e-12)


def test_table_word_distance():
    u = evaluate(Braidword("DDAAABBCCBABCCB"), AnyonModel(5))
    assert phase_invariant_distance(np.diag([1, np.exp(1j * np.pi / 4)]), u) == pytest.approx(0.00491, abs=5e-5)
    u = evaluate(Braidword("AAABADADADABAAA"), AnyonModel(7))
    assert phase_invariant_distance(H, u) == pytest.approx(0.00550, abs=5e-5)


def test_composition_order():
    m = AnyonModel(5)
    a, b = letter_matrices(m, 1)[:2]
    assert np.allclose(evaluate(Braidword("AB"), m), b @ a)


@given(words1)
def test_word_times_inverse_is_identity(w):
    word = Braidword(w)
    u = evaluate(word + word.inverse(), AnyonModel(7))
    assert np.abs(u - np.eye(2)).max() < 1e-12


@given(words2)
def test_simplify_preserves_matrix(w):
    m = AnyonModel(6)
    word = Braidword(w, 2)
    s = simplify(word)
    assert len(s) <= len(word)
    assert np.abs(evaluate(s, m) - evaluate(word, m)).max() < 1e-11


@given(words2)
def test_text_roundtrip(w):
    word = Braidword(w, 2, "single")
    back = Braidword.parse(word.to_text(), 2)
    assert back == word
    assert [t.orientation for t in word.tokens] == [1 if c < "F" else -1 for c in w]


def test_parse_infers_arity():
    assert Braidword.parse("ABCD").n_qubits == 1
    assert Braidword.parse("ABCE").n_qubits == 2
    assert Braidword.parse("scheme=single:AB").scheme == "single"
    with pytest.raises(BraidwordError):
        Braidword("AE", 1)
    with pytest.raises(BraidwordError):
        Braidword("A", 1) + Braidword("A", 2)


def test_single_scheme_letters_are_ebms():
    m = AnyonModel(5)
    assert np.allclose(evaluate(Braidword("A", 1, "single"), m), single_qubit_ebm(1, m))
    assert np.allclose(evaluate(Braidword("AA", 1, "single"), m), evaluate(Braidword("A"), m))


@pytest.mark.parametrize("n_qubits", [1, 2])
def test_block_evaluator_matches(n_qubits):
    mats = letter_matrices(AnyonModel(3), n_qubits)
    ev = BlockEvaluator(mats)
    rng = np.random.default_rng(0)
    for length in (1, 4, 15, 16):
        w = rng.integers(0, len(mats), (20, length))
        assert np.abs(ev(w) - evaluate_batch(w, mats)).max() < 1e-12


def test_letter_matrices_read_only():
    mats = letter_matrices(AnyonModel(5), 2)
    with pytest.raises(ValueError):
        mats[0, 0, 0] = 0
