"""Golden-value suites behind ``uncertainty-qp verify``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from . import catalog
from .generators import get_generators
from .oracle import oracle_min
from .variance_qp import (
    PROP_TABLE_PAIRS,
    SolverConfig,
    build_quadratic_form,
    decompose,
    pairwise_gellmann_table,
    reference_ht,
    solve_general,
    solve_qubit,
)

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    computed: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.computed - self.expected) <= self.tol)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (
            f"{tag} {self.name}: expected={self.expected:.10g} computed={self.computed:.10g} "
            f"|diff|={abs(self.computed - self.expected):.2e} tol={self.tol:g}"
        )


def qubit_suite(cfg: SolverConfig, count: int = 20) -> List[Check]:
    rng = np.random.default_rng(np.random.SeedSequence(int(cfg.seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=(2,)))
    gens = get_generators(2)
    checks = []
    for i in range(count):
        a, b = rng.standard_normal(3), rng.standard_normal(3)
        Q = build_quadratic_form([decompose(gens.combine(a)), decompose(gens.combine(b))])
        res = solve_qubit(Q)
        closed = float(np.trace(Q.O) - np.linalg.eigvalsh(Q.O)[-1])
        checks.append(Check(f"qubit[{i}] closed form", closed, res.m, 1e-12))
        orc = oracle_min([gens.combine(a), gens.combine(b)], restarts=16, seed=i)
        checks.append(Check(f"qubit[{i}] oracle", orc.value, res.m, 1e-8))
    return checks


def qutrit_suite(cfg: SolverConfig) -> List[Check]:
    checks = []
    for name, (factory, m_exp, ell_exp, tol) in catalog.GOLDEN.items():
        res = solve_general(factory(), cfg)
        checks.append(Check(f"{name} m", m_exp, res.m, tol))
        if ell_exp is not None:
            checks.append(Check(f"{name} ell", ell_exp, res.ell, tol))
    A, B = catalog.pair_0427()
    rho = catalog.PAIR_0427_RHO
    direct = float(sum(np.trace(X @ X @ rho).real - np.trace(X @ rho).real ** 2 for X in (A, B)))
    checks.append(Check("pair_0427 variance at reported minimizer", solve_general([A, B], cfg).m, direct, 1e-4))
    return checks


def table_suite(cfg: SolverConfig) -> List[Check]:
    table = pairwise_gellmann_table(cfg)
    nonzero = set(PROP_TABLE_PAIRS)
    checks = []
    for i in range(1, 9):
        for j in range(i + 1, 9):
            expected = 7 / 16 if (i, j) in nonzero else 0.0
            checks.append(Check(f"m_{i}{j}", expected, table[i - 1, j - 1], 1e-4))
    return checks


def ht_suite(cfg: SolverConfig) -> List[Check]:
    checks = []
    for t in np.linspace(-2.0, 2.0, 21):
        res = solve_general(catalog.ht_pair(float(t)), cfg)
        checks.append(Check(f"h({t:+.1f})", reference_ht(float(t)), res.m, 2e-3))
    return checks


SUITES: Dict[str, Callable[[SolverConfig], List[Check]]] = {
    "qubit": qubit_suite,
    "qutrit": qutrit_suite,
    "table": table_suite,
    "ht": ht_suite,
}


def run_suite(name: str, cfg: Optional[SolverConfig] = None, echo: Optional[Callable[[str], None]] = None) -> List[Check]:
    cfg = cfg or SolverConfig()
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        if suite not in SUITES:
            raise KeyError(f"unknown suite {suite!r}")
        for check in SUITES[suite](cfg):
            out.append(check)
            if echo is not None:
                echo(f"[{suite}] {check.line()}")
    return out
