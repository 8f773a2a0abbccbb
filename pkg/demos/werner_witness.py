"""
Detecting entanglement with variance sums
=========================================

For Werner states ``p |psi-><psi-| + (1 - p) I/4`` the Kronecker-sum
criterion with ``(sigma_x, sigma_z)`` on both qubits compares
``var(M_1) + var(M_2)`` with ``m(sx, sz) + m(sx, sz) = 2``.  The sum equals
``4 (1 - p)``, so detection starts above ``p = 1/2``; PPT detection starts
above ``p = 1/3``.
"""
import numpy as np

from uncertainty_qp import catalog
from uncertainty_qp.entanglement import BipartiteState, partial_transpose
from uncertainty_qp.entanglement import test_separability_violation as separability

pairs = ((catalog.pauli(1), catalog.pauli(3)), (catalog.pauli(1), catalog.pauli(3)))
singlet = catalog.singlet()
proj = np.outer(singlet, singlet.conj())

print(f"{'p':>5} {'var sum':>9} {'bound':>7} {'verdict':>13} {'min eig of PT':>14}")
for p in np.linspace(0, 1, 11):
    state = BipartiteState((2, 2), p * proj + (1 - p) * np.eye(4) / 4)
    v = separability(state, pairs)
    pt_min = np.linalg.eigvalsh(partial_transpose(state))[0]
    print(f"{p:5.2f} {v.value:9.4f} {v.bound:7.4f} {v.label:>13} {pt_min:14.4f}")
