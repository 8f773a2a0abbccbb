"""Global minimum of a quadratic on a sphere.

Solves ``min v^T H v + 2 c^T v  subject to |v| = radius`` exactly, which is the
boundary case of the trust-region subproblem.  The minimizer satisfies
``(H + mu I) v = -c`` with ``H + mu I`` positive semidefinite; ``mu`` is the
root of the secular equation ``|v(mu)| = radius`` to the right of
``-lambda_min(H)``, except in the hard case where ``c`` has no component in
the bottom eigenspace.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = ["SphereQPResult", "sphere_quadratic_min"]


@dataclass(frozen=True)
class SphereQPResult:
    v: np.ndarray
    value: float
    multiplier: float
    hard_case: bool


def _bracket(secular, base: float, lo_off: float, hi_off: float):
    """Offsets from ``base = -lambda_min`` giving ``secular(lo) <= 0 <= secular(hi)``.

    In exact arithmetic the analytic offsets already bracket the root; when they
    are tiny relative to ``base`` rounding can push an endpoint across it.
    """
    lo = base + lo_off
    for _ in range(60):
        if secular(lo) <= 0.0 or lo_off == 0.0:
            break
        lo_off *= 0.5
        lo = base + lo_off
    hi = base + hi_off
    for _ in range(60):
        if secular(hi) >= 0.0:
            break
        hi_off = 2.0 * hi_off + np.finfo(float).eps * max(1.0, abs(base))
        hi = base + hi_off
    return lo, hi


def sphere_quadratic_min(H, c, radius: float, *, degeneracy_tol: float = 1e-12) -> SphereQPResult:
    """Minimize ``v^T H v + 2 c^T v`` over ``|v| = radius``.

    Parameters
    ----------
    H : array_like, shape (p, p)
        Real symmetric matrix.
    c : array_like, shape (p,)
        Linear term (the objective uses ``2 c``).
    radius : float
        Sphere radius, positive.

    Returns
    -------
    SphereQPResult
        Minimizer, optimal value, Lagrange multiplier ``mu`` and whether the
        hard case occurred.
    """
    H = np.asarray(H, dtype=float)
    H = 0.5 * (H + H.T)
    c = np.asarray(c, dtype=float)
    if radius <= 0:
        raise ValueError("radius must be positive")

    evals, Q = np.linalg.eigh(H)
    beta = Q.T @ c
    lam1 = evals[0]
    scale = max(1.0, np.max(np.abs(evals)), np.linalg.norm(c))
    bottom = evals - lam1 <= degeneracy_tol * scale
    beta_bottom = np.linalg.norm(beta[bottom])
    beta_norm = np.linalg.norm(beta)

    def v_of(mu):
        gap = evals + mu
        coef = np.zeros_like(beta)
        live = np.abs(beta) > 0
        coef[live] = -beta[live] / gap[live]
        return coef

    def secular(mu):
        # 1/|v| - 1/radius is nearly linear in mu, which suits bracketing
        nv = np.linalg.norm(v_of(mu))
        return (1.0 / nv if nv > 0 else np.inf) - 1.0 / radius

    hard = beta_bottom <= 1e-14 * scale
    if not hard:
        lo, hi = _bracket(secular, -lam1, beta_bottom / radius, beta_norm / radius)
        if hi - lo <= 1e-15 * max(1.0, abs(hi)) or secular(lo) == 0.0:
            mu = lo if secular(lo) == 0.0 else hi
        else:
            mu = brentq(secular, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
        coef = v_of(mu)
        # tiny rescale absorbs root-finding slack so the constraint holds exactly
        coef *= radius / np.linalg.norm(coef)
    else:
        beta_hard = np.where(bottom, 0.0, beta)
        gap = evals - lam1
        coef0 = np.zeros_like(beta)
        coef0[~bottom] = -beta_hard[~bottom] / gap[~bottom]
        n0 = np.linalg.norm(coef0)
        if n0 <= radius:
            mu = -lam1
            tau = np.sqrt(max(radius * radius - n0 * n0, 0.0))
            coef = coef0.copy()
            coef[np.argmax(bottom)] += tau
        else:
            beta = beta_hard
            hi = -lam1 + beta_norm / radius
            mu = brentq(secular, -lam1 + 1e-300, hi, xtol=1e-15, maxiter=500) if hi > -lam1 else -lam1
            coef = v_of(mu)
            coef *= radius / np.linalg.norm(coef)
            hard = False

    v = Q @ coef
    value = float(v @ H @ v + 2.0 * c @ v)
    return SphereQPResult(v=v, value=value, multiplier=float(mu), hard_case=bool(hard))
