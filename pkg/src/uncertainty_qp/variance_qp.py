"""Variance-sum lower bounds as a quadratic program over pure coherence vectors.

For observables ``A_mu = a0_mu + a_mu.G`` on ``C^n`` the tight bound

    m = min_rho sum_mu var_rho(A_mu) = (2/n) (sum_mu |a_mu|^2 + ell)

where ``ell = min r^T T r`` over pure-state coherence vectors and

    O = sum_mu a_mu a_mu^T,
    T = (n - 2) sum_k Tr(O D_k) D_k - (n - 1) O.

Qubits have the closed form ``m = Tr O - lambda_max(O)``.  Qutrits are solved
stratum by stratum: the point ``I1`` exactly, the sphere ``I2`` exactly as a
sphere-constrained quadratic, and ``I3`` by seeded sampling on an ``R`` grid
followed by a Nelder-Mead polish in a smooth chart.  Larger ``n`` falls back to
descent over unit vectors of ``C^n``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from .bloch import (
    R_MAX,
    SQRT3,
    CoherenceDecomposition,
    ExtStratum,
    check_hermitian,
    classify_ext3,
    decompose,
    ext3_chart,
    state_from_vector,
    star,
    vector_from_state,
)
from .errors import DimensionError, DomainError, StateError
from .generators import StarTensor, get_generators, get_star_tensor
from .trust_region import sphere_quadratic_min

__all__ = [
    "SolverConfig",
    "QuadraticForm",
    "BoundResult",
    "variance",
    "formal_variance",
    "build_quadratic_form",
    "solve_qubit",
    "solve_qutrit",
    "solve_general",
    "reference_ht",
    "pairwise_gellmann_table",
    "PROP_TABLE_PAIRS",
]

TIE_TOL = 1e-12
REFINE_PER_SLICE = 16
REFINE_ITERS = 80

# pairs (1-based) with m_ij = 7/16; all other Gell-Mann pairs have m_ij = 0
PROP_TABLE_PAIRS = (
    (1, 4), (1, 5), (1, 6), (1, 7),
    (2, 4), (2, 5), (2, 6), (2, 7),
    (4, 6), (4, 7), (5, 6), (5, 7),
)


@dataclass(frozen=True)
class SolverConfig:
    """Tuning knobs for the stochastic solvers.

    ``grid_N`` radii ``k sqrt3 / (2N)`` are scanned with ``samples_per_slice``
    Gaussian draws per radius and branch; the best ``polish_starts`` samples
    seed the local polish.  ``restarts`` applies to the ``n >= 4`` path.
    """

    grid_N: int = 200
    samples_per_slice: int = 2000
    polish_tol: float = 1e-9
    restarts: int = 32
    seed: int = 0
    max_polish_iters: int = 500
    polish_starts: int = 8
    threads: int = 1

    def __post_init__(self):
        for name in ("grid_N", "samples_per_slice", "restarts", "max_polish_iters", "polish_starts", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.polish_tol > 0:
            raise ValueError("polish_tol must be positive")

    def as_dict(self) -> dict:
        return {
            "grid_N": self.grid_N,
            "samples_per_slice": self.samples_per_slice,
            "polish_tol": self.polish_tol,
            "restarts": self.restarts,
            "seed": self.seed,
            "max_polish_iters": self.max_polish_iters,
            "polish_starts": self.polish_starts,
            "threads": self.threads,
        }


@dataclass(frozen=True)
class QuadraticForm:
    """The matrices ``O`` and ``T`` for ``K`` observables on ``C^n``.

    ``coeffs`` keeps the generator coefficients ``a_mu`` row by row so that
    variances can be re-evaluated directly.
    """

    n: int
    K: int
    O: np.ndarray
    T: np.ndarray
    norms: float
    coeffs: np.ndarray

    def value(self, r) -> float:
        r = np.asarray(r, dtype=float)
        return float(r @ self.T @ r)

    def bound_from_ell(self, ell: float) -> float:
        return (2.0 / self.n) * (self.norms + ell)


@dataclass
class BoundResult:
    """Outcome of a bound computation.

    ``stratum`` is an :class:`ExtStratum` for qutrits, ``"bloch-sphere"`` for
    qubits and ``"pure-vector"`` for ``n >= 4``.
    """

    ell: float
    m: float
    r_min: np.ndarray
    rho_min: np.ndarray
    stratum: Union[ExtStratum, str]
    diagnostics: dict = field(default_factory=dict)

    @property
    def stratum_tag(self) -> str:
        return self.stratum.tag if isinstance(self.stratum, ExtStratum) else str(self.stratum)


# ---------------------------------------------------------------------------
# variances
# ---------------------------------------------------------------------------

def formal_variance(A, X) -> float:
    """``<A^2, X> - <A, X>^2`` for any Hermitian ``X``, without positivity checks."""
    A = np.asarray(A, dtype=complex)
    X = np.asarray(X, dtype=complex)
    if A.shape != X.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {X.shape}")
    mean = np.trace(A @ X).real
    second = np.trace(A @ A @ X).real
    return float(second - mean * mean)


def variance(A, rho) -> float:
    """Variance of observable ``A`` in the density matrix ``rho``.

    Raises
    ------
    DimensionError
        On shape mismatch.
    StateError
        If ``rho`` does not have unit trace or has an eigenvalue below ``-1e-9``.
    """
    A = check_hermitian(A)
    rho = check_hermitian(rho)
    if A.shape != rho.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {rho.shape}")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise StateError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -1e-9:
        raise StateError("density matrix is not positive semidefinite")
    return formal_variance(A, rho)


def _direct_variance_sum(Q: QuadraticForm, rho: np.ndarray) -> float:
    gens = get_generators(Q.n)
    return float(sum(formal_variance(gens.combine(a), rho) for a in Q.coeffs))


# ---------------------------------------------------------------------------
# quadratic form
# ---------------------------------------------------------------------------

def build_quadratic_form(decomps: Sequence[CoherenceDecomposition], D: Optional[StarTensor] = None) -> QuadraticForm:
    """Assemble ``O`` and ``T`` from coherence decompositions.

    The identity coefficients ``a0`` never enter, so the result is invariant
    under shifting any observable by a multiple of the identity.
    """
    decomps = list(decomps)
    if not decomps:
        raise DimensionError("need at least one observable")
    n = decomps[0].n
    if any(d.n != n for d in decomps):
        raise DimensionError("all observables must act on the same dimension")
    if D is None:
        D = get_star_tensor(n)
    elif D.n != n:
        raise DimensionError(f"star tensor is for n={D.n}, observables have n={n}")
    coeffs = np.array([d.a for d in decomps], dtype=float)
    O = coeffs.T @ coeffs
    weights = np.einsum("ij,kij->k", O, D.D)
    T = (n - 2) * np.tensordot(weights, D.D, axes=1) - (n - 1) * O
    T = 0.5 * (T + T.T)
    return QuadraticForm(n=n, K=len(decomps), O=O, T=T, norms=float(np.sum(coeffs**2)), coeffs=coeffs)


def _observables_to_form(observables) -> tuple:
    observables = [check_hermitian(A) for A in observables]
    if not observables:
        raise DimensionError("need at least one observable")
    n = observables[0].shape[0]
    if any(A.shape != (n, n) for A in observables):
        raise DimensionError("all observables must have the same dimension")
    gens = get_generators(n)
    return observables, build_quadratic_form([decompose(A, gens) for A in observables])


# ---------------------------------------------------------------------------
# qubits
# ---------------------------------------------------------------------------

def _canonical_sign(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > 1e-14)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def solve_qubit(Q: QuadraticForm) -> BoundResult:
    """Closed form ``m = Tr O - lambda_max(O)`` attained at the top eigenvector of ``O``."""
    if Q.n != 2:
        raise DimensionError(f"solve_qubit needs n = 2, got n = {Q.n}")
    evals, evecs = np.linalg.eigh(Q.O)
    lam_max = float(evals[-1])
    r = _canonical_sign(evecs[:, -1].copy())
    r /= np.linalg.norm(r)
    rho = state_from_vector(r)
    ell = -lam_max
    m = Q.bound_from_ell(ell)
    diagnostics = {
        "method": "closed-form",
        "lambda_max": lam_max,
        "trace_O": float(np.trace(Q.O)),
        "constraint_residual": abs(float(np.linalg.norm(r)) - 1.0),
        "m_direct": _direct_variance_sum(Q, rho),
    }
    return BoundResult(ell=ell, m=m, r_min=r, rho_min=rho, stratum="bloch-sphere", diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# qutrits
# ---------------------------------------------------------------------------

def _ext3_rows(R, eps, free: np.ndarray) -> np.ndarray:
    """Vectorized lift; row ``i`` of ``free`` lies on the sphere of radius ``R[i]``."""
    R = np.broadcast_to(np.asarray(R, dtype=float), free.shape[:1])
    eps = np.broadcast_to(np.asarray(eps, dtype=float), free.shape[:1])
    disc = np.sqrt(np.maximum(3.0 - 4.0 * R * R, 0.0))
    s = (SQRT3 + eps * disc) / (2.0 * R * R)
    r4, r5, r6, r7 = free.T
    out = np.empty((free.shape[0], 8))
    out[:, 0] = s * (r4 * r6 + r5 * r7)
    out[:, 1] = s * (r5 * r6 - r4 * r7)
    out[:, 2] = 0.5 * s * (r4 * r4 + r5 * r5 - r6 * r6 - r7 * r7)
    out[:, 3:7] = free
    out[:, 7] = (-1.0 + eps * SQRT3 * disc) / 4.0
    return out


def _slice_rng(seed: int, k: int, branch: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(k, branch))
    return np.random.default_rng(ss)


def _sample_slice(T: np.ndarray, cfg: SolverConfig, k: int, branch: int, keep: int):
    """Best ``keep`` of ``samples_per_slice`` Gaussian directions at radius ``R_k``."""
    eps = 1 if branch == 0 else -1
    R = SQRT3 * k / (2.0 * cfg.grid_N)
    rng = _slice_rng(cfg.seed, k, branch)
    free = rng.standard_normal((cfg.samples_per_slice, 4))
    free *= R / np.linalg.norm(free, axis=1, keepdims=True)
    r = _ext3_rows(R, eps, free)
    vals = np.einsum("si,ij,sj->s", r, T, r)
    idx = np.argsort(vals, kind="stable")[:keep]
    return vals[idx], free[idx]


def _values_and_grads(T: np.ndarray, R: np.ndarray, eps: np.ndarray, free: np.ndarray):
    disc = np.sqrt(np.maximum(3.0 - 4.0 * R * R, 0.0))
    s = ((SQRT3 + eps * disc) / (2.0 * R * R))[:, None]
    r = _ext3_rows(R, eps, free)
    g = 2.0 * r @ T
    r4, r5, r6, r7 = free.T
    dq1 = np.stack([r6, r7, r4, r5], axis=1)
    dq2 = np.stack([-r7, r6, r5, -r4], axis=1)
    dq3 = np.stack([r4, r5, -r6, -r7], axis=1)
    grad = s * (g[:, :1] * dq1 + g[:, 1:2] * dq2 + g[:, 2:3] * dq3) + g[:, 3:7]
    return np.einsum("si,ij,sj->s", r, T, r), grad


def _refine_on_slices(T: np.ndarray, R: np.ndarray, eps: np.ndarray, free: np.ndarray):
    """Monotone projected gradient steps on each sample's own sphere ``|free| = R``.

    For fixed ``R`` the objective is a quartic in the direction whose basins can
    be too narrow for sampling alone; a few steps sort samples into basins.
    Rows never interact, so results do not depend on slice scheduling.
    """
    free = free.copy()
    vals, grad = _values_and_grads(T, R, eps, free)
    step = np.full(len(vals), 0.5 / max(1.0, float(np.abs(T).sum())))
    R2 = (R * R)[:, None]
    for _ in range(REFINE_ITERS):
        grad -= (np.sum(grad * free, axis=1, keepdims=True) / R2) * free
        cand = free - step[:, None] * grad
        cand *= R[:, None] / np.linalg.norm(cand, axis=1, keepdims=True)
        cvals, cgrad = _values_and_grads(T, R, eps, cand)
        ok = cvals < vals
        free[ok], vals[ok], grad[ok] = cand[ok], cvals[ok], cgrad[ok]
        step = np.where(ok, step * 1.5, step * 0.5)
    return vals, free


def _chart_coords(R: float, eps: int, free: np.ndarray) -> np.ndarray:
    phi = math.atan2(2.0 * R, eps * math.sqrt(max(3.0 - 4.0 * R * R, 0.0)))
    return np.concatenate([[phi], free / np.linalg.norm(free)])


def _polish(T: np.ndarray, x0: np.ndarray, cfg: SolverConfig):
    def f(x):
        if not np.any(x[1:]):
            return np.inf
        r = ext3_chart(x[0], x[1:])
        return float(r @ T @ r)

    step = 0.05
    simplex = np.vstack([x0] + [x0 + step * e for e in np.eye(5)])
    x, fx = x0, f(x0)
    iterations = 0
    # Nelder-Mead stalls on its own simplex; restart from the incumbent until no progress
    while iterations < cfg.max_polish_iters:
        res = minimize(
            f, x, method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "maxiter": cfg.max_polish_iters - iterations,
                "xatol": 1e-12,
                "fatol": cfg.polish_tol * 1e-3,
            },
        )
        iterations += int(res.nit)
        improved = fx - res.fun
        if res.fun < fx:
            x, fx = res.x, float(res.fun)
        if improved <= cfg.polish_tol or res.nit == 0:
            break
        step = max(step * 0.1, 1e-6)
        simplex = np.vstack([x] + [x + step * e for e in np.eye(5)])
    return x, fx, iterations


def _select_starts(vals: np.ndarray, k: np.ndarray, branch: np.ndarray, count: int) -> list:
    """Row indices to polish: the global best ``count`` plus, per branch, the best
    ``count`` slice winners that are local minima along the R grid."""
    order = np.lexsort((np.arange(len(vals)), branch, k, vals))
    chosen = list(order[:count])
    for b in (0, 1):
        rows = order[branch[order] == b]
        # first occurrence per slice in value order is that slice's winner
        _, first = np.unique(k[rows], return_index=True)
        winners = rows[first]                       # sorted by slice index
        w = vals[winners]
        left = np.r_[True, w[1:] <= w[:-1]]
        right = np.r_[w[:-1] <= w[1:], True]
        basins = winners[left & right]
        basins = basins[np.lexsort((k[basins], vals[basins]))]
        for row in basins[:count]:
            if row not in chosen:
                chosen.append(row)
    return [int(i) for i in chosen]


def _solve_i3(T: np.ndarray, cfg: SolverConfig):
    tasks = [(k, b) for k in range(1, cfg.grid_N + 1) for b in (0, 1)]
    keep = min(REFINE_PER_SLICE, cfg.samples_per_slice)
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            chunks = list(pool.map(lambda kb: _sample_slice(T, cfg, kb[0], kb[1], keep), tasks))
    else:
        chunks = [_sample_slice(T, cfg, k, b, keep) for k, b in tasks]
    ks = np.repeat([kb[0] for kb in tasks], keep)
    branch = np.repeat([kb[1] for kb in tasks], keep)
    R = SQRT3 * ks / (2.0 * cfg.grid_N)
    eps = np.where(branch == 0, 1.0, -1.0)
    raw = np.concatenate([c[0] for c in chunks])
    free = np.concatenate([c[1] for c in chunks])
    vals, free = _refine_on_slices(T, R, eps, free)

    starts = _select_starts(vals, ks, branch, cfg.polish_starts)
    best_row = starts[0]
    best_val = float(vals[best_row])
    best_r = _ext3_rows(R[best_row], eps[best_row], free[best_row][None, :])[0]
    total_iters = 0
    for row in starts:
        x, fx, iters = _polish(T, _chart_coords(R[row], int(eps[row]), free[row]), cfg)
        total_iters += iters
        if fx < best_val - TIE_TOL:
            best_val, best_r = fx, ext3_chart(x[0], x[1:])
    info = {
        "samples": len(tasks) * cfg.samples_per_slice,
        "best_sample_value": float(raw.min()),
        "best_refined_value": float(vals[starts[0]]),
        "best_refined_slice": int(ks[starts[0]]),
        "polish_starts": len(starts),
        "polish_iterations": total_iters,
    }
    return best_val, best_r, info


def solve_qutrit(Q: QuadraticForm, cfg: Optional[SolverConfig] = None) -> BoundResult:
    """Minimize ``r^T T r`` over pure qutrit coherence vectors, stratum by stratum."""
    if Q.n != 3:
        raise DimensionError(f"solve_qutrit needs n = 3, got n = {Q.n}")
    cfg = cfg or SolverConfig()
    T = Q.T

    r1 = np.zeros(8)
    r1[7] = -1.0
    v1 = Q.value(r1)

    sub = sphere_quadratic_min(T[:3, :3], 0.5 * T[:3, 7], R_MAX)
    r2 = np.zeros(8)
    r2[:3] = sub.v
    r2[7] = 0.5
    v2 = Q.value(r2)

    v3, r3, info = _solve_i3(T, cfg)

    best_val, best_r = v1, r1
    for val, r in ((v2, r2), (v3, r3)):
        if val < best_val - TIE_TOL:
            best_val, best_r = val, r

    stratum = classify_ext3(best_r)
    rho = state_from_vector(best_r)
    ell = Q.value(best_r)
    m = Q.bound_from_ell(ell)
    residual = float(np.linalg.norm(star(best_r, best_r) - best_r) + abs(np.linalg.norm(best_r) - 1.0))
    diagnostics = {
        "method": "stratified",
        "stratum_values": {"I1": v1, "I2": v2, "I3": v3},
        "i2_hard_case": sub.hard_case,
        "epsilon": stratum.epsilon,
        "constraint_residual": residual,
        "m_direct": _direct_variance_sum(Q, rho),
        **info,
    }
    return BoundResult(ell=ell, m=m, r_min=best_r, rho_min=rho, stratum=stratum, diagnostics=diagnostics)


# ---------------------------------------------------------------------------
# n >= 4: descent over unit vectors
# ---------------------------------------------------------------------------

def _pure_objective(obs: np.ndarray, psi: np.ndarray):
    Apsi = obs @ psi                      # (K, n)
    means = np.einsum("a,ka->k", psi.conj(), Apsi).real
    seconds = np.einsum("ka,ka->k", Apsi.conj(), Apsi).real
    value = float(np.sum(seconds - means**2))
    # Wirtinger gradient of the homogeneous extension, then tangent projection
    grad = 2.0 * np.einsum("kab,kb->a", obs, Apsi) - 4.0 * np.einsum("k,ka->a", means, Apsi)
    grad -= np.vdot(psi, grad).real * psi
    return value, grad


def _descend(obs: np.ndarray, psi: np.ndarray, max_iter: int = 4000, gtol: float = 1e-10):
    value, grad = _pure_objective(obs, psi)
    step = 0.5
    for it in range(max_iter):
        gnorm2 = float(np.vdot(grad, grad).real)
        if math.sqrt(gnorm2) < gtol:
            return psi, value, it, True
        step = min(step * 2.0, 1.0)
        while True:
            cand = psi - step * grad
            cand /= np.linalg.norm(cand)
            cval, cgrad = _pure_objective(obs, cand)
            if cval <= value - 1e-4 * step * gnorm2 or step < 1e-16:
                break
            step *= 0.5
        if step < 1e-16:
            return psi, value, it, False
        psi, value, grad = cand, cval, cgrad
    return psi, value, max_iter, False


def _solve_pure_vectors(Q: QuadraticForm, observables: list, cfg: SolverConfig) -> BoundResult:
    n = Q.n
    obs = np.array(observables)
    rng = np.random.default_rng(np.random.SeedSequence(int(cfg.seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(n,)))
    best = None
    converged_runs = 0
    for run in range(cfg.restarts):
        psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        psi /= np.linalg.norm(psi)
        psi, val, iters, ok = _descend(obs, psi)
        converged_runs += ok
        if best is None or val < best[0] - TIE_TOL:
            best = (val, psi, run)
    psi = best[1]
    rho = np.outer(psi, psi.conj())
    r = vector_from_state(rho)
    ell = Q.value(r)
    m = Q.bound_from_ell(ell)
    diagnostics = {
        "method": "pure-vector-descent",
        "restarts": cfg.restarts,
        "converged_runs": int(converged_runs),
        "best_run": best[2],
        "constraint_residual": float(np.linalg.norm(rho @ rho - rho)),
        "m_direct": _direct_variance_sum(Q, rho),
    }
    return BoundResult(ell=ell, m=m, r_min=r, rho_min=rho, stratum="pure-vector", diagnostics=diagnostics)


def solve_general(observables, cfg: Optional[SolverConfig] = None) -> BoundResult:
    """Variance-sum bound for any list of Hermitian observables of common dimension.

    Dispatches to :func:`solve_qubit`, :func:`solve_qutrit`, or a multi-restart
    pure-state descent for ``n >= 4``.  ``diagnostics["m_direct"]`` holds the
    variance sum re-evaluated on ``rho_min``.
    """
    cfg = cfg or SolverConfig()
    observables, Q = _observables_to_form(observables)
    if Q.n == 2:
        return solve_qubit(Q)
    if Q.n == 3:
        return solve_qutrit(Q, cfg)
    return _solve_pure_vectors(Q, observables, cfg)


# ---------------------------------------------------------------------------
# reference values
# ---------------------------------------------------------------------------

def reference_ht(t: float) -> float:
    """Closed-form bound for the one-parameter qutrit family ``(A_t, B)``."""
    t2 = t * t
    if abs(t) <= 1:
        return (15.0 - t2) * (1.0 + t2) / 32.0
    return (3.0 + 4.0 * t2) / (4.0 * (1.0 + t2))


def pairwise_gellmann_table(cfg: Optional[SolverConfig] = None) -> np.ndarray:
    """8x8 symmetric array of ``m(G_i, G_j)`` (zero-based indices, zero diagonal)."""
    cfg = cfg or SolverConfig()
    eye = np.eye(8)
    decs = [CoherenceDecomposition(n=3, a0=0.0, a=eye[k]) for k in range(8)]
    table = np.zeros((8, 8))
    for i in range(8):
        for j in range(i + 1, 8):
            res = solve_qutrit(build_quadratic_form([decs[i], decs[j]]), cfg)
            table[i, j] = table[j, i] = res.m
    return table
