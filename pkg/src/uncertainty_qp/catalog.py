"""Named observables, states and reference values used by tests, demos and the CLI."""
from __future__ import annotations

import numpy as np

from .generators import get_generators

__all__ = [
    "pauli",
    "gellmann",
    "angular_momentum",
    "diag_pair",
    "pair_1532",
    "pair_0427",
    "PAIR_0427_RHO",
    "ht_pair",
    "singlet",
    "phi_plus",
    "GOLDEN",
]

SQ2 = np.sqrt(2.0)


def pauli(k: int) -> np.ndarray:
    """Pauli matrix ``sigma_k`` for ``k`` in 1..3."""
    return np.array(get_generators(2).generators[k - 1])


def gellmann(k: int) -> np.ndarray:
    """Gell-Mann matrix ``G_k`` for ``k`` in 1..8."""
    return np.array(get_generators(3).generators[k - 1])


def angular_momentum() -> list:
    """Spin-1 operators ``L_x, L_y, L_z``."""
    Lx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / SQ2
    Ly = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / SQ2
    Lz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return [Lx, Ly, Lz]


def diag_pair() -> list:
    """``A = diag(-1, 0, 1)`` with ``B = -G_7``; jointly minimal at ``diag(1, 0, 0)``."""
    return [np.diag([-1.0, 0.0, 1.0]).astype(complex), -gellmann(7)]


def _pair_b() -> np.ndarray:
    return np.array([[0, 1, 0], [1, 0, 1j], [0, -1j, 0]])


def pair_1532() -> list:
    """Pair with bound ``15/32`` and ``ell = -147/64``."""
    return [np.diag([-1.0, 0.0, 1.0]).astype(complex), _pair_b()]


def pair_0427() -> list:
    """Pair with bound ``0.4279379...``.

    ``A[2, 2] = 1`` is the entry consistent with the reported minimizer
    :data:`PAIR_0427_RHO` and the constant term of the accompanying reduction.
    """
    A = np.array([[1, 0, 1], [0, -1, -1j], [1, 1j, 1]])
    B = np.array([[0, 1, -1j], [1, 0, 1], [1j, 1, 0]])
    return [A, B]


PAIR_0427_RHO = np.array(
    [
        [0.14742387711339922, 0.28637384163565377j, -0.20899784782884737],
        [-0.28637384163565377j, 0.5562869379027389, 0.4059825161855749j],
        [-0.20899784782884737, -0.4059825161855749j, 0.2962891849838617],
    ]
)


def ht_pair(t: float) -> list:
    """One-parameter family ``A_t = [[-1, 0, t], [0, 0, 0], [t, 0, 1]]`` with the fixed ``B``."""
    A = np.array([[-1, 0, t], [0, 0, 0], [t, 0, 1]], dtype=complex)
    return [A, _pair_b()]


def singlet() -> np.ndarray:
    """``(|01> - |10>)/sqrt 2``."""
    return np.array([0, 1, -1, 0], dtype=complex) / SQ2


def phi_plus() -> np.ndarray:
    """``(|00> + |11>)/sqrt 2``."""
    return np.array([1, 0, 0, 1], dtype=complex) / SQ2


# name -> (observables factory, expected m, expected ell or None, tolerance)
GOLDEN = {
    "g4_g6": (lambda: [gellmann(4), gellmann(6)], 7 / 16, -43 / 32, 1e-4),
    "diag_pair": (diag_pair, 0.0, -2.0, 1e-4),
    "angular_momentum": (angular_momentum, 1.0, None, 1e-4),
    "pair_1532": (pair_1532, 15 / 32, -147 / 64, 1e-3),
    "pair_0427": (pair_0427, 0.427938, None, 1e-3),
}
