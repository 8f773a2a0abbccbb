"""Brute-force referee: minimize a variance sum over pure states directly.

Works on the real ``2n``-sphere ``x = (Re psi, Im psi)`` with batched projected
gradient descent over all restarts at once.  Nothing here touches coherence
vectors or the stratified solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, StateError
from .bloch import check_hermitian

__all__ = ["OracleResult", "oracle_min", "variance_pure", "variance_sum_pure", "variance_sum_gradient"]

MAX_ITER = 5000
GRAD_TOL = 1e-10
AGREE_TOL = 1e-8


@dataclass
class OracleResult:
    value: float
    psi: np.ndarray
    restarts_used: int
    converged: bool


def variance_pure(A, psi) -> float:
    """``<psi|A^2|psi> - <psi|A|psi>^2`` for a unit vector ``psi``."""
    A = np.asarray(A, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if A.ndim != 2 or A.shape != (psi.size, psi.size):
        raise DimensionError(f"observable {A.shape} does not act on a vector of length {psi.size}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise StateError("psi must be normalized")
    Apsi = A @ psi
    mean = np.vdot(psi, Apsi).real
    return float(np.vdot(Apsi, Apsi).real - mean * mean)


def _real_blocks(observables) -> np.ndarray:
    # Hermitian A acts on (Re, Im) as the real symmetric [[Re A, -Im A], [Im A, Re A]]
    out = []
    for A in observables:
        re, im = A.real, A.imag
        out.append(np.block([[re, -im], [im, re]]))
    return np.array(out)


def variance_sum_pure(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Variance sum for real-form observables ``M`` (K, 2n, 2n) at rows of ``x``."""
    Mx = np.einsum("kab,sb->ska", M, x)
    means = np.einsum("sa,ska->sk", x, Mx)
    seconds = np.einsum("ska,ska->sk", Mx, Mx)
    return np.sum(seconds - means**2, axis=1)


def variance_sum_gradient(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Euclidean gradient of ``sum_k (x^T M_k^2 x - (x^T M_k x)^2)`` at rows of ``x``.

    Equal to ``2 sum_k (M_k^2 x - 2 <M_k> M_k x)``; on the unit sphere its
    tangential part is ``2 sum_k (M_k - <M_k>)^2 x`` projected.
    """
    Mx = np.einsum("kab,sb->ska", M, x)
    means = np.einsum("sa,ska->sk", x, Mx)
    M2x = np.einsum("kab,skb->ska", M, Mx)
    return 2.0 * np.sum(M2x - 2.0 * means[:, :, None] * Mx, axis=1)


def _tangent(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    return g - np.sum(g * x, axis=1, keepdims=True) * x


def oracle_min(observables, restarts: int = 32, seed: int = 0, trace: Optional[list] = None) -> OracleResult:
    """Best variance sum over ``restarts`` projected-descent runs from random pure states.

    Each run backtracks from step 0.5 by halving under an Armijo condition, so
    its objective never increases.  A run converges when the tangential
    gradient falls below ``1e-10`` or no step yields a strict decrease in
    floating point; the result is flagged converged when some
    run converged and the two best runs agree to ``1e-8``.  If ``trace`` is a
    list, the per-run objective vector is appended after every iteration.
    """
    obs = [check_hermitian(A) for A in observables]
    if not obs:
        raise DimensionError("need at least one observable")
    n = obs[0].shape[0]
    if n < 2 or any(A.shape != (n, n) for A in obs):
        raise DimensionError("observables must share a dimension n >= 2")
    if restarts < 1:
        raise ValueError("restarts must be positive")

    M = _real_blocks(obs)
    rng = np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)
    x = rng.standard_normal((restarts, 2 * n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)

    f = variance_sum_pure(M, x)
    g = _tangent(x, variance_sum_gradient(M, x))
    done = np.zeros(restarts, dtype=bool)
    stalled = np.zeros(restarts, dtype=bool)
    for _ in range(MAX_ITER):
        gn = np.linalg.norm(g, axis=1)
        done |= (gn < GRAD_TOL) | stalled
        active = np.flatnonzero(~done)
        if active.size == 0:
            break
        xa, fa, ga, gna = x[active], f[active], g[active], gn[active]
        step = np.full(active.size, 0.5)
        pending = np.ones(active.size, dtype=bool)
        new_x, new_f = xa.copy(), fa.copy()
        while pending.any():
            idx = np.flatnonzero(pending)
            cand = xa[idx] - step[idx, None] * ga[idx]
            cand /= np.linalg.norm(cand, axis=1, keepdims=True)
            fc = variance_sum_pure(M, cand)
            ok = fc <= fa[idx] - 1e-4 * step[idx] * gna[idx] ** 2
            hit = idx[ok]
            new_x[hit], new_f[hit] = cand[ok], fc[ok]
            pending[hit] = False
            # no strict decrease left at float resolution: the run has stalled
            flat = hit[fc[ok] >= fa[hit]]
            stalled[active[flat]] = True
            step[idx[~ok]] *= 0.5
            stuck = idx[~ok][step[idx[~ok]] < 1e-20]
            pending[stuck] = False
            stalled[active[stuck]] = True
        x[active], f[active] = new_x, new_f
        if trace is not None:
            trace.append(f.copy())
        g[active] = _tangent(new_x, variance_sum_gradient(M, new_x))

    order = np.lexsort((np.arange(restarts), f))
    best = order[0]
    psi = x[best, :n] + 1j * x[best, n:]
    psi /= np.linalg.norm(psi)
    value = float(sum(variance_pure(A, psi) for A in obs))
    grad_ok = (np.linalg.norm(g, axis=1) < GRAD_TOL) | stalled
    agree = restarts == 1 or abs(f[order[1]] - f[best]) <= AGREE_TOL
    return OracleResult(value=value, psi=psi, restarts_used=restarts, converged=bool(grad_ok.any() and agree))
