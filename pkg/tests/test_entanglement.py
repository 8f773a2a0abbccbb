import numpy as np
import pytest

from uncertainty_qp import catalog
from uncertainty_qp.entanglement import (
    BipartiteState,
    composite_observable,
    partial_transpose,
    random_product_state,
    random_separable_state,
    test_ppt_variance as ppt_variance,
    test_separability_violation as separability_violation,
)
from uncertainty_qp.errors import DimensionError, HermiticityError, StateError
from uncertainty_qp.variance_qp import SolverConfig, solve_general

S1, S3 = catalog.pauli(1), catalog.pauli(3)
PAIRS = ((S1, S3), (S1, S3))  # (A1, A2) on the first factor, (B1, B2) on the second
CFG = SolverConfig()


def pure(psi, dims=(2, 2)):
    return BipartiteState.from_vector(psi, dims)


def witness_pair():
    # projector onto the negative eigenvector of the transposed Bell state and a commuting companion
    psi_minus = catalog.singlet()
    return np.outer(psi_minus, psi_minus.conj()), np.outer(catalog.phi_plus(), catalog.phi_plus().conj())


def test_composite_examples():
    assert np.allclose(composite_observable(S3, S3), np.diag([2, 0, 0, -2]))
    B = catalog.gellmann(4)
    assert np.allclose(composite_observable(np.zeros((2, 2)), B), np.kron(np.eye(2), B))
    M = composite_observable(S1, S1)
    s = catalog.singlet()
    assert np.vdot(s, M @ M @ s).real == pytest.approx(0.0, abs=1e-15)


def test_composite_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        composite_observable(np.array([[0, 1], [0, 0]]), S1)


def test_partial_transpose_examples():
    rng = np.random.default_rng(0)
    ra, rb = random_product_state((2, 1), rng)[:2, :2], random_product_state((3, 1), rng)[:3, :3]
    st = BipartiteState((2, 3), np.kron(ra, rb))
    assert np.allclose(partial_transpose(st, "first"), np.kron(ra.T, rb))
    bell = pure(catalog.phi_plus())
    assert np.linalg.eigvalsh(partial_transpose(bell))[0] == pytest.approx(-0.5)
    mixed = BipartiteState((2, 2), np.eye(4) / 4)
    assert np.array_equal(partial_transpose(mixed), mixed.rho)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 3)])
@pytest.mark.parametrize("side", ["first", "second"])
def test_partial_transpose_involution(dims, side):
    rng = np.random.default_rng(sum(dims))
    d = dims[0] * dims[1]
    for _ in range(20):
        X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = X @ X.conj().T
        st = BipartiteState(dims, rho / np.trace(rho).real)
        once = partial_transpose(st, side)
        assert np.array_equal(partial_transpose(once, side, dims=dims), st.rho)
        assert np.trace(once) == np.trace(st.rho)
        assert np.allclose(once, once.conj().T)


def test_partial_transpose_involution_on_ppt_states():
    rng = np.random.default_rng(9)
    for _ in range(50):
        st = random_separable_state((2, 3), rng)
        twice = partial_transpose(BipartiteState((2, 3), partial_transpose(st)))
        assert np.array_equal(twice, st.rho)


def test_partial_transpose_bare_matrix_checks():
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4))
    with pytest.raises(DimensionError):
        partial_transpose(np.eye(4), dims=(2, 3))


def test_partial_transpose_bad_side():
    with pytest.raises(ValueError):
        partial_transpose(BipartiteState((2, 2), np.eye(4) / 4), "third")


def test_state_validation():
    with pytest.raises(DimensionError):
        BipartiteState((2, 2), np.eye(3) / 3)
    with pytest.raises(StateError):
        BipartiteState((2, 2), np.eye(4) / 2)
    with pytest.raises(StateError):
        BipartiteState((2, 2), np.diag([1.5, -0.5, 0, 0]))


def test_singlet_detected():
    v = separability_violation(pure(catalog.singlet()), PAIRS, CFG)
    assert v.entangled and v.label == "entangled"
    assert v.value == pytest.approx(0.0, abs=1e-12)
    assert v.margin == pytest.approx(2.0, abs=1e-6)


def test_product_state_inconclusive():
    v = separability_violation(pure([1, 0, 0, 0]), PAIRS, CFG)
    assert not v.entangled
    assert v.margin <= 1e-12


def test_maximally_mixed_inconclusive():
    st = BipartiteState((2, 2), np.eye(4) / 4)
    assert not separability_violation(st, PAIRS, CFG).entangled
    A, B = witness_pair()
    assert not ppt_variance(st, A, B, CFG).entangled


def test_ppt_bell_state():
    A, B = witness_pair()
    v = ppt_variance(pure(catalog.phi_plus()), A, B, CFG)
    assert v.value == pytest.approx(-0.5, abs=1e-12)
    assert v.bound == pytest.approx(0.0, abs=1e-8)
    assert v.entangled and v.margin == pytest.approx(0.5, abs=1e-8)


def test_pair_dimension_mismatch():
    with pytest.raises(DimensionError):
        separability_violation(pure(catalog.singlet()), ((S1, catalog.gellmann(1)), (S1, S3)), CFG)
    with pytest.raises(DimensionError):
        ppt_variance(pure(catalog.singlet()), S1, S3, CFG)


def test_not_collected_as_tests():
    assert separability_violation.__test__ is False and ppt_variance.__test__ is False


def test_qutrit_subsystems():
    # |00> + |11> + |22> on 3x3 with Gell-Mann pairs
    psi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = 1
    st = pure(psi, (3, 3))
    G = catalog.gellmann
    pairs = ((G(4), G(6)), (-G(4).conj(), -G(6).conj()))
    v = separability_violation(st, pairs, SolverConfig(grid_N=60, samples_per_slice=400))
    assert v.bound == pytest.approx(7 / 8, abs=1e-4)
    assert v.entangled


@pytest.mark.slow
def test_no_false_positives_separability():
    rng = np.random.default_rng(2024)
    bound = solve_general([S1, S3]).m * 2
    for _ in range(1000):
        st = random_separable_state((2, 2), rng)
        assert not separability_violation(st, PAIRS, bound=bound).entangled


@pytest.mark.slow
def test_no_false_positives_ppt():
    rng = np.random.default_rng(2025)
    A, B = witness_pair()
    bound = solve_general([A, B]).m
    for _ in range(1000):
        st = random_separable_state((2, 2), rng)
        assert not ppt_variance(st, A, B, bound=bound).entangled


def test_deterministic_verdicts():
    rng1, rng2 = np.random.default_rng(7), np.random.default_rng(7)
    for _ in range(5):
        s1, s2 = random_separable_state((2, 2), rng1), random_separable_state((2, 2), rng2)
        assert separability_violation(s1, PAIRS, CFG) == separability_violation(s2, PAIRS, CFG)


def test_random_separable_is_valid():
    rng = np.random.default_rng(1)
    for _ in range(50):
        st = random_separable_state((2, 3), rng)
        assert np.linalg.eigvalsh(st.rho)[0] >= -1e-12
        assert np.linalg.eigvalsh(partial_transpose(st))[0] >= -1e-12
