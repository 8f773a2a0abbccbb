"""
A one-parameter family of qutrit bounds
=======================================

``A_t`` interpolates through the 15/32 pair at ``t = 0``.  The numerical
bound is compared with the closed-form curve, which changes formula at
``|t| = 1``.
"""
import numpy as np

from uncertainty_qp import catalog
from uncertainty_qp.variance_qp import SolverConfig, reference_ht, solve_general

cfg = SolverConfig(grid_N=100, samples_per_slice=1000)

print(f"{'t':>6} {'solver':>14} {'closed form':>14} {'|diff|':>10} {'stratum':>8}")
for t in np.linspace(-3, 3, 25):
    res = solve_general(catalog.ht_pair(float(t)), cfg)
    h = reference_ht(float(t))
    print(f"{t:6.2f} {res.m:14.10f} {h:14.10f} {abs(res.m - h):10.2e} {res.stratum_tag:>8}")
