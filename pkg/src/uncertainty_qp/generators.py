"""Generalized Gell-Mann generators of su(n), structure constants and star tensor.

Normalization follows ``Tr(G_i G_j) = 2 delta_ij`` so that ``n = 2`` gives the
Pauli matrices and ``n = 3`` the eight Gell-Mann matrices in their usual order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError

__all__ = [
    "GeneratorSet",
    "StarTensor",
    "build_generators",
    "build_star_tensor",
    "get_generators",
    "get_star_tensor",
    "dimension_from_length",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered traceless Hermitian basis of su(n).

    Attributes
    ----------
    n : int
        Hilbert-space dimension.
    generators : ndarray, shape (n**2 - 1, n, n)
        Complex generators ``G_k``.
    d_tensor : ndarray, shape (N, N, N)
        Totally symmetric constants ``d_ijk = Re Tr(G_i G_j G_k) / 2``.
    f_tensor : ndarray, shape (N, N, N)
        Totally antisymmetric constants ``f_ijk = Im Tr(G_i G_j G_k) / 2``.
    """

    n: int
    generators: np.ndarray
    d_tensor: np.ndarray
    f_tensor: np.ndarray

    @property
    def size(self) -> int:
        return self.n * self.n - 1

    def combine(self, coeffs) -> np.ndarray:
        """Return ``sum_k coeffs[k] * G_k``."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.size,):
            raise DimensionError(f"expected {self.size} coefficients, got shape {coeffs.shape}")
        return np.tensordot(coeffs, self.generators, axes=1)


@dataclass(frozen=True)
class StarTensor:
    """Stack of real symmetric matrices ``D_k`` defining the star product.

    ``(x * y)_k = x^T D_k y``.  ``D`` has shape ``(N, N, N)`` with the first
    axis indexing ``k``.
    """

    n: int
    D: np.ndarray

    @property
    def size(self) -> int:
        return self.n * self.n - 1


def _generator_matrices(n: int) -> np.ndarray:
    mats = []
    for m in range(1, n):  # zero-based column index
        for j in range(m):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, m] = sym[m, j] = 1.0
            anti = np.zeros((n, n), dtype=complex)
            anti[j, m] = -1j
            anti[m, j] = 1j
            mats.append(sym)
            mats.append(anti)
        diag = np.zeros(n)
        diag[:m] = 1.0
        diag[m] = -m
        mats.append(np.diag(np.sqrt(2.0 / (m * (m + 1))) * diag).astype(complex))
    return np.array(mats)


def build_generators(n: int) -> GeneratorSet:
    """Build the generalized Gell-Mann generators for dimension ``n``.

    Generators are emitted column by column: for each column ``m`` the
    symmetric/antisymmetric pairs ``(j, m)``, ``j < m``, then the diagonal
    generator supported on the first ``m + 1`` levels.

    Raises
    ------
    DimensionError
        If ``n < 2``.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    gens = _generator_matrices(n)
    triple = np.einsum("iab,jbc,kca->ijk", gens, gens, gens)
    return GeneratorSet(
        n=n,
        generators=_frozen(gens),
        d_tensor=_frozen(0.5 * triple.real),
        f_tensor=_frozen(0.5 * triple.imag),
    )


def build_star_tensor(gens: GeneratorSet) -> StarTensor:
    """Star-product matrices ``(D_k)_ij = sqrt(n(n-1)/2) d_ijk / (n - 2)``.

    For ``n = 2`` the prefactor is singular while every ``d_ijk`` vanishes; the
    qubit star product is identically zero, so all ``D_k`` are returned as 0.
    """
    n = gens.n
    size = gens.size
    if n == 2:
        D = np.zeros((size, size, size))
    else:
        scale = np.sqrt(n * (n - 1) / 2.0) / (n - 2)
        # d is totally symmetric; move k to the front
        D = scale * np.transpose(gens.d_tensor, (2, 0, 1))
        D = 0.5 * (D + np.transpose(D, (0, 2, 1)))
    return StarTensor(n=n, D=_frozen(D))


@lru_cache(maxsize=None)
def get_generators(n: int) -> GeneratorSet:
    """Cached :func:`build_generators`."""
    return build_generators(n)


@lru_cache(maxsize=None)
def get_star_tensor(n: int) -> StarTensor:
    """Cached :func:`build_star_tensor` for dimension ``n``."""
    return build_star_tensor(get_generators(n))


def dimension_from_length(length: int) -> int:
    """Recover ``n`` from a coherence-vector length ``n**2 - 1``."""
    n = int(round(np.sqrt(length + 1)))
    if n < 2 or n * n - 1 != length:
        raise DimensionError(f"length {length} is not of the form n^2 - 1 with n >= 2")
    return n
