"""Coherence-vector geometry of qudit observables and states.

A state is written ``rho(r) = (1 + sqrt(n(n-1)/2) r.G) / n`` and an observable
``A = a0 * 1 + a.G``.  Pure states are the vectors with ``|r| = 1`` and (for
``n > 2``) ``r * r = r``.  For qutrits the pure-state manifold is split into
three strata, the point ``I1``, the 2-sphere ``I2`` and the generic part
``I3`` parametrized by the free block ``(r4, r5, r6, r7)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, DomainError, HermiticityError
from .generators import (
    GeneratorSet,
    StarTensor,
    dimension_from_length,
    get_generators,
    get_star_tensor,
)

__all__ = [
    "CoherenceDecomposition",
    "ExtStratum",
    "decompose",
    "state_from_vector",
    "vector_from_state",
    "star",
    "is_density",
    "is_density_qutrit",
    "is_density_qutrit_trig",
    "is_pure",
    "qutrit_spectrum_trig",
    "lift_ext3",
    "ext3_chart",
    "classify_ext3",
    "ext3_residuals",
    "check_hermitian",
]

SQRT3 = np.sqrt(3.0)
R_MAX = SQRT3 / 2
HERMITIAN_TOL = 1e-10
PURITY_TOL = 1e-8
STRATUM_TOL = 1e-9


@dataclass(frozen=True)
class CoherenceDecomposition:
    """``A = a0 * 1 + a.G`` for a Hermitian ``A`` on ``C^n``."""

    n: int
    a0: float
    a: np.ndarray


@dataclass(frozen=True)
class ExtStratum:
    """Location of a pure qutrit coherence vector in the I1/I2/I3 partition.

    ``R``, ``epsilon`` and ``free`` are only set for ``I3``.
    """

    tag: str
    R: Optional[float] = None
    epsilon: Optional[int] = None
    free: Optional[tuple] = None

    def as_dict(self) -> dict:
        out = {"tag": self.tag}
        if self.tag == "I3":
            out.update(R=self.R, epsilon=self.epsilon, free=list(self.free))
        return out


def check_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return the Hermitian part of ``A``; raise if ``A`` is not Hermitian to ``tol``."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    dev = np.max(np.abs(A - A.conj().T)) if A.size else 0.0
    if dev > tol:
        raise HermiticityError(f"matrix is not Hermitian (max |A - A^H| = {dev:.3e})")
    return 0.5 * (A + A.conj().T)


def _gens_for(n: int, gens: Optional[GeneratorSet]) -> GeneratorSet:
    if gens is None:
        return get_generators(n)
    if gens.n != n:
        raise DimensionError(f"generator set is for n={gens.n}, input has n={n}")
    return gens


def _star_for(n: int, D: Optional[StarTensor]) -> StarTensor:
    if D is None:
        return get_star_tensor(n)
    if D.n != n:
        raise DimensionError(f"star tensor is for n={D.n}, input has n={n}")
    return D


def decompose(A, gens: Optional[GeneratorSet] = None) -> CoherenceDecomposition:
    """Coefficients ``a0 = Tr A / n`` and ``a_k = <A, G_k> / 2``."""
    A = check_hermitian(A)
    n = A.shape[0]
    gens = _gens_for(n, gens)
    a0 = float(np.trace(A).real / n)
    a = 0.5 * np.einsum("kab,ba->k", gens.generators, A).real
    return CoherenceDecomposition(n=n, a0=a0, a=a)


def state_from_vector(r, gens: Optional[GeneratorSet] = None) -> np.ndarray:
    """Density matrix ``rho(r)`` (unit trace, Hermitian, not necessarily PSD)."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 1:
        raise DimensionError("coherence vector must be one-dimensional")
    n = dimension_from_length(r.size) if gens is None else gens.n
    gens = _gens_for(n, gens)
    if r.size != gens.size:
        raise DimensionError(f"expected length {gens.size}, got {r.size}")
    rho = (np.eye(n) + np.sqrt(n * (n - 1) / 2.0) * gens.combine(r)) / n
    return 0.5 * (rho + rho.conj().T)


def vector_from_state(rho, gens: Optional[GeneratorSet] = None) -> np.ndarray:
    """Inverse of :func:`state_from_vector` for a unit-trace Hermitian matrix."""
    rho = check_hermitian(rho)
    n = rho.shape[0]
    gens = _gens_for(n, gens)
    coeff = np.einsum("kab,ba->k", gens.generators, rho).real
    return n * coeff / (2.0 * np.sqrt(n * (n - 1) / 2.0))


def star(x, y, D: Optional[StarTensor] = None) -> np.ndarray:
    """Symmetric star product, ``(x * y)_k = x^T D_k y``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionError(f"star product needs equal-length vectors, got {x.shape} and {y.shape}")
    D = _star_for(dimension_from_length(x.size), D)
    if x.size != D.size:
        raise DimensionError(f"expected length {D.size}, got {x.size}")
    return np.einsum("i,kij,j->k", x, D.D, y)


def is_density(r, tol: float = 1e-9) -> bool:
    """Generic positivity test via the smallest eigenvalue of ``rho(r)``."""
    rho = state_from_vector(r)
    return bool(np.linalg.eigvalsh(rho)[0] >= -tol)


def _require_qutrit(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (8,):
        raise DimensionError("qutrit closed forms need an 8-component vector; use is_density for other n")
    return r


def is_density_qutrit(r) -> bool:
    """Algebraic qutrit test: ``|r| <= 1`` and ``1 + 2<r, r*r> >= 3<r, r>``."""
    r = _require_qutrit(r)
    rr = float(r @ r)
    cubic = float(r @ star(r, r))
    return bool(np.sqrt(rr) <= 1 + 1e-10 and 1 + 2 * cubic >= 3 * rr - 1e-10)


def _cos_three_theta(r: np.ndarray, norm: float) -> float:
    # arccos has infinite slope at +-1, where every pure state sits (two equal
    # eigenvalues); values within rounding of +-1 are snapped so that float
    # noise of 1e-16 does not become an angle error of 1e-8
    c = float(r @ star(r, r)) / norm**3
    if abs(abs(c) - 1.0) <= 64 * np.finfo(float).eps:
        return float(np.sign(c))
    return float(np.clip(c, -1.0, 1.0))


def is_density_qutrit_trig(r) -> bool:
    """Trigonometric qutrit test on the angle ``arccos(<r, r*r> / |r|^3)``."""
    r = _require_qutrit(r)
    norm = float(np.linalg.norm(r))
    if norm == 0.0 or norm <= 0.5:
        return True
    if norm > 1 + 1e-10:
        return False
    cos_arg = _cos_three_theta(r, norm)
    half = np.clip(1.0 / (2 * norm), -1.0, 1.0)
    return bool(np.arccos(cos_arg) + 3 * np.arccos(half) <= np.pi + 1e-9)


def is_pure(r, D: Optional[StarTensor] = None, tol: float = PURITY_TOL) -> bool:
    """``|r| = 1`` and, for ``n > 2``, ``r * r = r``, both to ``tol``."""
    r = np.asarray(r, dtype=float)
    n = dimension_from_length(r.size)
    if abs(np.linalg.norm(r) - 1.0) > tol:
        return False
    if n == 2:
        return True
    return bool(np.linalg.norm(star(r, r, D) - r) <= tol)


def qutrit_spectrum_trig(r) -> np.ndarray:
    """Eigenvalues of ``rho(r)`` for a qutrit, in descending order.

    ``lambda = 1/3 + (2/3)|r| cos(theta + shift)`` with
    ``theta = arccos(<r, r*r> / |r|^3) / 3`` and shifts ``0, -2pi/3, +2pi/3``.
    """
    r = _require_qutrit(r)
    norm = float(np.linalg.norm(r))
    if norm == 0.0:
        return np.full(3, 1.0 / 3.0)
    theta = np.arccos(_cos_three_theta(r, norm)) / 3.0
    shifts = np.array([0.0, -2 * np.pi / 3, 2 * np.pi / 3])
    return 1.0 / 3.0 + (2.0 / 3.0) * norm * np.cos(theta + shifts)


def _ext3_from_products(free_sq_scale: float, r8: float, free: np.ndarray) -> np.ndarray:
    # free_sq_scale is s = (sqrt3 + eps sqrt(3 - 4R^2)) / (2R^2); applied to the free quadratics
    r4, r5, r6, r7 = free
    out = np.empty(8)
    out[0] = free_sq_scale * (r4 * r6 + r5 * r7)
    out[1] = free_sq_scale * (r5 * r6 - r4 * r7)
    out[2] = 0.5 * free_sq_scale * (r4 * r4 + r5 * r5 - r6 * r6 - r7 * r7)
    out[3:7] = free
    out[7] = r8
    return out


def lift_ext3(R: float, epsilon: int, free) -> np.ndarray:
    """Pure qutrit vector in the ``I3`` stratum with free block ``free`` on the radius-``R`` sphere.

    Parameters
    ----------
    R : float
        Radius of ``(r4, r5, r6, r7)``, in ``(0, sqrt(3)/2]``.
    epsilon : {+1, -1}
        Branch of the quadratic equation for ``r8``.
    free : array_like, shape (4,)
        ``(r4, r5, r6, r7)``.  Rescaled onto the radius-``R`` sphere if its
        norm is within relative ``1e-6`` of ``R``.

    Raises
    ------
    DomainError
        If ``R`` is out of range, ``epsilon`` is not a sign, or ``free`` is
        zero or far from radius ``R``.
    """
    if epsilon not in (1, -1):
        raise DomainError(f"epsilon must be +1 or -1, got {epsilon!r}")
    if not (0.0 < R <= R_MAX * (1 + 1e-12)):
        raise DomainError(f"R must lie in (0, sqrt(3)/2], got {R!r}")
    R = min(float(R), R_MAX)
    free = np.asarray(free, dtype=float)
    if free.shape != (4,):
        raise DimensionError("free block must have 4 components")
    fnorm = np.linalg.norm(free)
    if fnorm == 0.0:
        raise DomainError("free block must be nonzero")
    if abs(fnorm - R) > 1e-6 * R:
        raise DomainError(f"free block has norm {fnorm!r}, expected R = {R!r}")
    free = free * (R / fnorm)
    disc = np.sqrt(max(3.0 - 4.0 * R * R, 0.0))
    s = (SQRT3 + epsilon * disc) / (2.0 * R * R)
    r8 = (-1.0 + epsilon * SQRT3 * disc) / 4.0
    return _ext3_from_products(s, r8, free)


def ext3_chart(phi: float, direction) -> np.ndarray:
    """Smooth chart of the qutrit pure-state manifold.

    ``R = (sqrt3/2) sin(phi)`` and ``eps sqrt(3 - 4R^2) = sqrt3 cos(phi)``, so
    a single angle sweeps both branches of ``I3``; ``phi -> 0`` approaches
    ``I2`` and ``phi -> pi`` reaches ``I1``.  ``direction`` is any nonzero
    4-vector (normalized internally).  Valid for every real ``phi``.
    """
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    c, s = np.cos(phi), np.sin(phi)
    # s * R^2 = sqrt3 (1 + cos phi) / 2 carries the 1/R^2 singularity analytically
    out = _ext3_from_products(SQRT3 * (1.0 + c) / 2.0, (-1.0 + 3.0 * c) / 4.0, d)
    out[3:7] = R_MAX * s * d
    return out


def ext3_residuals(r) -> np.ndarray:
    """The nine polynomial constraints cutting out the qutrit pure states.

    Returns the residual vector; every component vanishes on the manifold.
    """
    r1, r2, r3, r4, r5, r6, r7, r8 = _require_qutrit(r)
    s3 = SQRT3
    return np.array([
        s3 * (r4 * r6 + r5 * r7) + r1 * (2 * r8 - 1),
        s3 * (r5 * r6 - r4 * r7) + r2 * (2 * r8 - 1),
        s3 * (r4**2 + r5**2 - r6**2 - r7**2) + 2 * r3 * (2 * r8 - 1),
        s3 * (r1 * r6 - r2 * r7) + r4 * (s3 * r3 - r8 - 1),
        s3 * (r2 * r6 + r1 * r7) + r5 * (s3 * r3 - r8 - 1),
        s3 * (r1 * r4 + r2 * r5) - r6 * (s3 * r3 + r8 + 1),
        s3 * (r2 * r4 - r1 * r5) + r7 * (s3 * r3 + r8 + 1),
        2 * (r1**2 + r2**2 + r3**2) - (r4**2 + r5**2 + r6**2 + r7**2) - 2 * r8 * (r8 + 1),
        r1**2 + r2**2 + r3**2 + r4**2 + r5**2 + r6**2 + r7**2 + r8**2 - 1,
    ])


def classify_ext3(r) -> ExtStratum:
    """Assign a pure qutrit vector to ``I1``, ``I2`` or ``I3``.

    Raises
    ------
    DomainError
        If ``r`` is not a pure-state coherence vector.
    """
    r = _require_qutrit(r)
    if not is_pure(r):
        raise DomainError("vector is not a pure qutrit coherence vector")
    free = r[3:7]
    R = float(np.linalg.norm(free))
    if R <= STRATUM_TOL:
        return ExtStratum("I1") if r[7] < 0 else ExtStratum("I2")
    disc = np.sqrt(max(3.0 - 4.0 * min(R, R_MAX) ** 2, 0.0))
    plus = (-1.0 + SQRT3 * disc) / 4.0
    minus = (-1.0 - SQRT3 * disc) / 4.0
    eps = 1 if abs(r[7] - plus) <= abs(r[7] - minus) else -1
    return ExtStratum("I3", R=R, epsilon=eps, free=tuple(float(x) for x in free))
