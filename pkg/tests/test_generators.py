import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from uncertainty_qp.errors import DimensionError
from uncertainty_qp.generators import (
    build_generators,
    build_star_tensor,
    dimension_from_length,
    get_generators,
    get_star_tensor,
)

from golden_d3 import d3_matrices

SQ3 = np.sqrt(3.0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_traceless_and_orthonormal(n):
    G = get_generators(n).generators
    assert G.shape == (n * n - 1, n, n)
    assert np.max(np.abs(np.trace(G, axis1=1, axis2=2))) <= 1e-12
    gram = np.einsum("iab,jab->ij", G.conj(), G)  # Tr(G_i^H G_j)
    assert np.allclose(gram, 2 * np.eye(n * n - 1), atol=1e-12, rtol=0)
    for g in G:
        assert np.allclose(g, g.conj().T, atol=0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_casimir(n):
    G = get_generators(n).generators
    total = np.einsum("kab,kbc->ac", G, G)
    assert np.allclose(total, 2 * (n - 1 / n) * np.eye(n), atol=1e-10)


def test_casimir_n4_value():
    G = get_generators(4).generators
    assert len(G) == 15
    assert np.allclose(sum(g @ g for g in G), 7.5 * np.eye(4), atol=1e-10)


def test_pauli_order():
    G = get_generators(2).generators
    s1 = np.array([[0, 1], [1, 0]])
    s2 = np.array([[0, -1j], [1j, 0]])
    s3 = np.diag([1, -1])
    for got, want in zip(G, (s1, s2, s3)):
        assert np.array_equal(got, want)


def test_gellmann_order():
    G = get_generators(3).generators
    want = np.zeros((8, 3, 3), dtype=complex)
    want[0][0, 1] = want[0][1, 0] = 1
    want[1][0, 1], want[1][1, 0] = -1j, 1j
    want[2] = np.diag([1, -1, 0])
    want[3][0, 2] = want[3][2, 0] = 1
    want[4][0, 2], want[4][2, 0] = -1j, 1j
    want[5][1, 2] = want[5][2, 1] = 1
    want[6][1, 2], want[6][2, 1] = -1j, 1j
    want[7] = np.diag([1, 1, -2]) / SQ3
    assert np.allclose(G, want, atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_structure_constant_symmetry(n):
    gs = get_generators(n)
    d, f = gs.d_tensor, gs.f_tensor
    for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]:
        sign = 1 if perm in [(1, 2, 0), (2, 0, 1)] else -1
        assert np.allclose(d, d.transpose(perm), atol=1e-12)
        assert np.allclose(f, sign * f.transpose(perm), atol=1e-12)


@pytest.mark.parametrize(
    "ijk,value",
    [
        ((1, 1, 8), 1 / SQ3),
        ((2, 2, 8), 1 / SQ3),
        ((3, 3, 8), 1 / SQ3),
        ((8, 8, 8), -1 / SQ3),
        ((1, 4, 6), 0.5),
        ((1, 5, 7), 0.5),
        ((2, 4, 7), -0.5),
        ((2, 5, 6), 0.5),
        ((3, 4, 4), 0.5),
        ((3, 6, 6), -0.5),
        ((4, 4, 8), -1 / (2 * SQ3)),
        ((7, 7, 8), -1 / (2 * SQ3)),
    ],
)
def test_d_values_qutrit(ijk, value):
    i, j, k = (x - 1 for x in ijk)
    assert get_generators(3).d_tensor[i, j, k] == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize(
    "ijk,value",
    [((1, 2, 3), 1.0), ((4, 5, 8), SQ3 / 2), ((6, 7, 8), SQ3 / 2), ((1, 4, 7), 0.5), ((2, 4, 6), 0.5), ((3, 4, 5), 0.5), ((1, 5, 6), -0.5), ((3, 6, 7), -0.5)],
)
def test_f_values_qutrit(ijk, value):
    i, j, k = (x - 1 for x in ijk)
    assert get_generators(3).f_tensor[i, j, k] == pytest.approx(value, abs=1e-12)


def test_structure_constants_reconstruct_products():
    # G_i G_j = (2/n) delta_ij + sum_k (d_ijk + i f_ijk) G_k
    gs = get_generators(3)
    G = gs.generators
    lhs = np.einsum("iab,jbc->ijac", G, G)
    rhs = (2 / 3) * np.einsum("ij,ac->ijac", np.eye(8), np.eye(3)) + np.einsum(
        "ijk,kac->ijac", gs.d_tensor + 1j * gs.f_tensor, G
    )
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_star_tensor_matches_table():
    D = get_star_tensor(3).D
    assert np.max(np.abs(D - d3_matrices())) <= 1e-12


def test_star_tensor_qubit_zero():
    assert not np.any(get_star_tensor(2).D)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_star_tensor_symmetric_traceless(n):
    D = get_star_tensor(n).D
    assert np.array_equal(D, D.transpose(0, 2, 1))
    assert np.max(np.abs(np.trace(D, axis1=1, axis2=2))) <= 1e-12


@pytest.mark.parametrize("n", [3, 5])
def test_star_tensor_independent_odd(n):
    D = get_star_tensor(n).D
    N = n * n - 1
    assert np.linalg.matrix_rank(D.reshape(N, -1)) == N


@pytest.mark.parametrize("n", [4, 6])
def test_star_tensor_rank_even_informational(n):
    D = get_star_tensor(n).D
    N = n * n - 1
    rank = np.linalg.matrix_rank(D.reshape(N, -1))
    print(f"n={n}: rank of stacked D_k = {rank} of {N}")
    assert 0 < rank <= N


@pytest.mark.parametrize("n", [0, 1, -3])
def test_invalid_dimension(n):
    with pytest.raises(DimensionError):
        build_generators(n)


def test_arrays_read_only():
    gs = get_generators(3)
    with pytest.raises(ValueError):
        gs.generators[0, 0, 0] = 5


def test_build_is_deterministic():
    a, b = build_generators(4), build_generators(4)
    assert np.array_equal(a.d_tensor, b.d_tensor)
    assert np.array_equal(build_star_tensor(a).D, get_star_tensor(4).D)


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_dimension_from_length(n):
    assert dimension_from_length(n * n - 1) == n


def test_dimension_from_bad_length():
    with pytest.raises(DimensionError):
        dimension_from_length(7)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, 8, elements=st.floats(-3, 3)))
def test_fourth_power_trace(x):
    X = get_generators(3).combine(x)
    lhs = np.trace(np.linalg.matrix_power(X, 4)).real
    assert lhs == pytest.approx(2 * (x @ x) ** 2, rel=1e-9, abs=1e-9)
