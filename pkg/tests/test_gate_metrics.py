import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_su2, random_u2
from su2k_braid.gate_metrics import (
    CNOT,
    MetricError,
    TwoQubitReport,
    assemble,
    block_decompose,
    d_cnot,
    makhlin_invariants,
    phase_invariant_distance,
    two_qubit_costs,
    unitarity_measure,
)

seeds = st.integers(0, 2**32 - 1)


def local(rng):
    return np.kron(random_u2(rng), random_u2(rng))


def test_distance_zero_and_phase():
    rng = np.random.default_rng(0)
    u = random_u2(rng)
    assert phase_invariant_distance(u, u) == 0.0
    assert phase_invariant_distance(np.exp(0.7j) * u, u) < 1e-14
    with pytest.raises(MetricError):
        phase_invariant_distance(np.eye(3), np.eye(2))


@given(seeds)
def test_distance_pseudometric(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_u2(rng) for _ in range(3))
    dab, dba = phase_invariant_distance(a, b), phase_invariant_distance(b, a)
    assert dab == pytest.approx(dba, abs=1e-12)
    assert dab <= phase_invariant_distance(a, c) + phase_invariant_distance(c, b) + 1e-9


def test_distance_batched():
    rng = np.random.default_rng(1)
    us = np.stack([random_u2(rng) for _ in range(5)])
    got = phase_invariant_distance(np.eye(2), us)
    assert got.shape == (5,)
    assert got[2] == pytest.approx(phase_invariant_distance(np.eye(2), us[2]))


def test_block_decompose_identity():
    m, a, leak = block_decompose(np.eye(5))
    assert m == 1 and np.allclose(a, np.eye(4)) and leak == 0


@given(seeds)
def test_assemble_roundtrip(seed):
    rng = np.random.default_rng(seed)
    a = local(rng)
    m = np.exp(1j * rng.uniform(0, 6))
    m2, a2, leak = block_decompose(assemble(m, a))
    assert m2 == m and np.array_equal(a2, a) and leak == 0
    assert abs(m2) == pytest.approx(1.0)


def test_leakage_picks_off_block_max():
    b = np.eye(5, dtype=complex)
    b[0, 3] = 0.2
    b[4, 0] = -0.3j
    assert block_decompose(b)[2] == pytest.approx(0.3)


def test_unitarity_measure():
    assert unitarity_measure(CNOT) == pytest.approx(0, abs=1e-14)
    assert unitarity_measure(2 * np.eye(4)) == pytest.approx(12)
    assert unitarity_measure(2 * np.eye(4), "nuclear") == pytest.approx(12)
    with pytest.raises(MetricError):
        unitarity_measure(np.eye(4), "bogus")


@given(seeds, st.floats(0.01, 0.2))
def test_unitarity_grows_with_perturbation(seed, eps):
    rng = np.random.default_rng(seed)
    a = local(rng)
    e = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    small, big = unitarity_measure(a + eps * e), unitarity_measure(a + 2 * eps * e)
    assert 0 < small < big


def test_makhlin_anchors():
    g = makhlin_invariants(CNOT)
    assert np.allclose(g, (0, 0, 1), atol=1e-12)
    assert np.allclose(makhlin_invariants(np.eye(4)), (1, 0, 3), atol=1e-12)
    assert d_cnot(CNOT) == pytest.approx(0, abs=1e-24)
    assert d_cnot(np.eye(4)) == pytest.approx(5)


def test_makhlin_local_invariance():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a = local(rng) @ CNOT @ local(rng)
        assert np.allclose(makhlin_invariants(a), (0, 0, 1), atol=1e-10)


@given(seeds)
def test_makhlin_invariant_under_sandwich(seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    g = np.array(makhlin_invariants(q))
    g2 = np.array(makhlin_invariants(local(rng) @ q @ local(rng)))
    assert np.abs(g - g2).max() < 1e-10


def test_makhlin_degenerate():
    with pytest.raises(MetricError):
        makhlin_invariants(np.zeros((4, 4)))


def test_batched_costs_match_scalar():
    rng = np.random.default_rng(3)
    bs = []
    for _ in range(4):
        b = np.eye(5, dtype=complex)
        b[1:, 1:] = local(rng) @ CNOT
        bs.append(b)
    bs.append(np.zeros((5, 5)))
    dc, du, m11 = two_qubit_costs(np.stack(bs))
    assert np.all(dc[:4] < 1e-20) and np.isinf(dc[4])
    assert np.allclose(m11[:4], 1)


def test_report_json_fields():
    rep = TwoQubitReport.from_matrix(assemble(1.0, CNOT), "AB", 5, "double")
    assert set(json.loads(rep.to_json())) == {"braidword", "k", "scheme", "d_cnot", "d_u", "m11", "g1", "g2", "g3"}
    assert rep.admissible()
