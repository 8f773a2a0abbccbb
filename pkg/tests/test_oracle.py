import numpy as np
import pytest

from uncertainty_qp import catalog
from uncertainty_qp.errors import DimensionError, StateError
from uncertainty_qp.oracle import (
    _real_blocks,
    oracle_min,
    variance_pure,
    variance_sum_gradient,
    variance_sum_pure,
)


def random_hermitian(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (X + X.conj().T) / 2


def test_pauli_pair():
    res = oracle_min([catalog.pauli(1), catalog.pauli(3)], restarts=16, seed=0)
    assert res.value == pytest.approx(1.0, abs=1e-10)
    assert res.converged


def test_gellmann_pair():
    res = oracle_min([catalog.gellmann(4), catalog.gellmann(6)], restarts=64, seed=0)
    assert res.value == pytest.approx(7 / 16, abs=1e-6)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_single_observable(n):
    A = random_hermitian(np.random.default_rng(n), n)
    assert oracle_min([A], restarts=8, seed=1).value == pytest.approx(0.0, abs=1e-9)


def test_result_invariants():
    rng = np.random.default_rng(1)
    obs = [random_hermitian(rng, 3) for _ in range(2)]
    res = oracle_min(obs, restarts=8, seed=3)
    assert np.linalg.norm(res.psi) == pytest.approx(1.0, abs=1e-12)
    assert res.value == pytest.approx(sum(variance_pure(A, res.psi) for A in obs), abs=1e-10)
    assert res.restarts_used == 8


def test_monotone_per_run():
    rng = np.random.default_rng(2)
    obs = [random_hermitian(rng, 3) for _ in range(3)]
    trace = []
    oracle_min(obs, restarts=6, seed=0, trace=trace)
    hist = np.array(trace)
    assert len(hist) > 1
    assert np.all(np.diff(hist, axis=0) <= 0)


def test_deterministic():
    obs = catalog.pair_1532()
    a, b = oracle_min(obs, 8, 5), oracle_min(obs, 8, 5)
    assert a.value == b.value and np.array_equal(a.psi, b.psi)


def test_finds_known_minimum_of_hard_pair():
    assert oracle_min(catalog.pair_1532(), 32, 0).value == pytest.approx(15 / 32, abs=1e-8)


@pytest.mark.parametrize(
    "A,psi,expected",
    [
        (catalog.pauli(3), [1, 0], 0.0),
        (catalog.pauli(3), np.array([1, 1]) / np.sqrt(2), 1.0),
        (catalog.gellmann(8), [0, 0, 1], 0.0),
    ],
)
def test_variance_pure_examples(A, psi, expected):
    assert variance_pure(A, psi) == pytest.approx(expected, abs=1e-15)


def test_variance_pure_errors():
    with pytest.raises(StateError):
        variance_pure(catalog.pauli(1), [1, 1])
    with pytest.raises(DimensionError):
        variance_pure(catalog.pauli(1), [1, 0, 0])


def test_errors():
    with pytest.raises(DimensionError):
        oracle_min([], 4, 0)
    with pytest.raises(DimensionError):
        oracle_min([np.eye(2), np.eye(3)], 4, 0)
    with pytest.raises(ValueError):
        oracle_min([np.eye(2)], 0, 0)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    h = 1e-5
    worst = 0.0
    for case in range(100):
        n = (2, 3, 4)[case % 3]
        obs = [random_hermitian(rng, n) for _ in range(int(rng.integers(1, 4)))]
        M = _real_blocks(obs)
        x = rng.standard_normal(2 * n)
        x /= np.linalg.norm(x)
        g = variance_sum_gradient(M, x[None])[0]
        fd = np.empty_like(x)
        for i in range(2 * n):
            e = np.zeros_like(x)
            e[i] = h
            fd[i] = (variance_sum_pure(M, (x + e)[None])[0] - variance_sum_pure(M, (x - e)[None])[0]) / (2 * h)
        worst = max(worst, np.linalg.norm(g - fd) / np.linalg.norm(g))
    assert worst <= 1e-6


def test_global_phase_invariance():
    rng = np.random.default_rng(4)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        obs = [random_hermitian(rng, n) for _ in range(2)]
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi /= np.linalg.norm(psi)
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        v1 = sum(variance_pure(A, psi) for A in obs)
        v2 = sum(variance_pure(A, phase * psi) for A in obs)
        assert abs(v1 - v2) <= 1e-12
