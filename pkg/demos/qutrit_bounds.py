"""
Variance-sum bounds for qutrit observables
==========================================

Each pair (or triple) of observables is reduced to a quadratic form on the
pure-state coherence vectors, solved stratum by stratum, and the minimizing
state is reported alongside the brute-force value over pure states.
"""
import numpy as np

from uncertainty_qp import catalog
from uncertainty_qp.oracle import oracle_min
from uncertainty_qp.variance_qp import SolverConfig, solve_general, variance

cfg = SolverConfig()

cases = {
    "G4, G6": [catalog.gellmann(4), catalog.gellmann(6)],
    "diag(-1,0,1), -G7": catalog.diag_pair(),
    "Lx, Ly, Lz": catalog.angular_momentum(),
    "15/32 pair": catalog.pair_1532(),
    "0.4279 pair": catalog.pair_0427(),
}

print(f"{'observables':<20} {'m':>12} {'ell':>12} {'stratum':>8} {'pure-state search':>18}")
for name, obs in cases.items():
    res = solve_general(obs, cfg)
    brute = oracle_min(obs, restarts=32, seed=1).value
    print(f"{name:<20} {res.m:12.8f} {res.ell:12.8f} {res.stratum_tag:>8} {brute:18.8f}")

# the minimizer is a genuine state that attains the bound
A, B = catalog.pair_1532()
res = solve_general([A, B], cfg)
rho = res.rho_min
print("\nminimizing state for the 15/32 pair:")
print(np.round(rho, 6))
print("eigenvalues:", np.round(np.linalg.eigvalsh(rho), 12))
print("var(A) + var(B) at that state:", variance(A, rho) + variance(B, rho))
