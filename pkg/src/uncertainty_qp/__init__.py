"""Tight lower bounds on sums of variances of qudit observables.

The bound is a nonconvex quadratic program over coherence vectors of pure
states; see :mod:`uncertainty_qp.variance_qp`.
"""
from .bloch import (
    CoherenceDecomposition,
    ExtStratum,
    classify_ext3,
    decompose,
    is_density,
    is_pure,
    lift_ext3,
    qutrit_spectrum_trig,
    star,
    state_from_vector,
    vector_from_state,
)
from .entanglement import (
    BipartiteState,
    Verdict,
    composite_observable,
    partial_transpose,
    test_ppt_variance,
    test_separability_violation,
)
from .errors import DimensionError, DomainError, HermiticityError, SolverError, StateError, UncertaintyQPError
from .generators import GeneratorSet, StarTensor, build_generators, build_star_tensor, get_generators, get_star_tensor
from .oracle import OracleResult, oracle_min, variance_pure
from .variance_qp import (
    BoundResult,
    QuadraticForm,
    SolverConfig,
    build_quadratic_form,
    formal_variance,
    pairwise_gellmann_table,
    reference_ht,
    solve_general,
    solve_qubit,
    solve_qutrit,
    variance,
)

__version__ = "0.1.0"
