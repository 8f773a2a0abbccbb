"""Command-line interface.

Exit codes: 0 success, 2 parse or dimension error, 3 non-Hermitian input,
4 solver failure.  The default seed may be set with ``UQP_SEED``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from .bloch import ExtStratum
from .entanglement import BipartiteState, test_ppt_variance, test_separability_violation
from .errors import DimensionError, HermiticityError, SolverError, StateError
from .generators import get_generators, get_star_tensor
from .io import (
    ParseError,
    digest,
    encode_matrix,
    load_entangle_observables,
    load_json,
    load_observables,
    load_state,
)
from .oracle import oracle_min
from .suites import SUITES, run_suite
from .variance_qp import SolverConfig, solve_general

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_HERMITIAN = 3
EXIT_SOLVER = 4

DIRECT_TOL = 1e-6


def _default_seed() -> int:
    raw = os.environ.get("UQP_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"UQP_SEED must be an integer, got {raw!r}") from None


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _emit(doc: dict, path=None) -> None:
    text = json.dumps(_jsonable(doc), indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _config(args) -> SolverConfig:
    return SolverConfig(
        grid_N=args.grid_N,
        samples_per_slice=args.samples,
        restarts=args.restarts,
        seed=args.seed,
        threads=args.threads,
    )


def _solve_checked(observables, cfg: SolverConfig):
    res = solve_general(observables, cfg)
    direct = res.diagnostics.get("m_direct", res.m)
    if not np.isfinite(res.m) or abs(direct - res.m) > DIRECT_TOL:
        raise SolverError(f"direct variance {direct!r} disagrees with bound {res.m!r}")
    return res


def cmd_bound(args) -> int:
    doc, raw = load_json(args.input)
    observables = load_observables(doc)
    cfg = _config(args)
    start = time.perf_counter()
    res = _solve_checked(observables, cfg)
    stratum = res.stratum.as_dict() if isinstance(res.stratum, ExtStratum) else {"tag": res.stratum}
    out = {
        "input_digest": digest(raw),
        "config": cfg.as_dict(),
        "n": observables[0].shape[0],
        "K": len(observables),
        "m": res.m,
        "ell": res.ell,
        "r_min": res.r_min,
        "rho_min": encode_matrix(res.rho_min),
        "stratum": stratum,
        "diagnostics": res.diagnostics,
        "wall_time": time.perf_counter() - start,
    }
    _emit(out, args.json_out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    checks = run_suite(args.suite, cfg, echo=print)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else 1


def cmd_dump(args) -> int:
    if args.n < 2:
        raise DimensionError(f"n must be >= 2, got {args.n}")
    gens = get_generators(args.n)
    if args.what == "generators":
        out = {"n": args.n, "observables": [encode_matrix(G) for G in gens.generators]}
    elif args.what == "dtensor":
        d = gens.d_tensor
        idx = np.argwhere(np.abs(d) > 1e-12)
        out = {
            "n": args.n,
            "d": d,
            "nonzeros": [[int(i) + 1, int(j) + 1, int(k) + 1, float(d[i, j, k])] for i, j, k in idx if i <= j <= k],
        }
    else:
        out = {"n": args.n, "D": get_star_tensor(args.n).D}
    _emit(out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc, raw = load_json(args.input)
    observables = load_observables(doc)
    res = oracle_min(observables, restarts=args.restarts, seed=args.seed)
    _emit({
        "input_digest": digest(raw),
        "restarts": res.restarts_used,
        "seed": args.seed,
        "value": res.value,
        "psi": [[z.real, z.imag] for z in res.psi],
        "converged": res.converged,
    })
    return EXIT_OK


def cmd_entangle(args) -> int:
    sdoc, _ = load_json(args.state)
    dims, rho = load_state(sdoc)
    try:
        state = BipartiteState(dims=dims, rho=rho)
    except StateError as exc:
        raise ParseError(str(exc)) from None
    odoc, _ = load_json(args.observables)
    parsed = load_entangle_observables(odoc)
    cfg = _config(args)
    if args.mode == "sum":
        if "pairs" not in parsed:
            raise ParseError("sum mode needs 'pairs'")
        verdict = test_separability_violation(state, parsed["pairs"], cfg)
    else:
        if "observables" not in parsed:
            raise ParseError("ppt mode needs 'observables'")
        A, B = parsed["observables"]
        verdict = test_ppt_variance(state, A, B, cfg, subsystem=args.subsystem)
    _emit({"mode": args.mode, "dims": list(dims), "config": cfg.as_dict(), **verdict.as_dict()}, args.json_out)
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser, seed_default: int) -> None:
    defaults = SolverConfig()
    p.add_argument("--seed", type=int, default=seed_default, help="random seed (default: $UQP_SEED or 0)")
    p.add_argument("--grid-N", dest="grid_N", type=int, default=defaults.grid_N, help="number of R slices")
    p.add_argument("--samples", type=int, default=defaults.samples_per_slice, help="samples per slice and branch")
    p.add_argument("--restarts", type=int, default=defaults.restarts, help="restarts for n >= 4")
    p.add_argument("--threads", type=int, default=defaults.threads, help="worker threads for sampling")


def build_parser(seed_default: int = 0) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncertainty-qp",
        description="Tight lower bounds on sums of variances of qudit observables.",
        epilog="Matrices in JSON files are n x n grids of [re, im] pairs. "
        "Exit codes: 0 ok, 2 parse/dimension error, 3 non-Hermitian input, 4 solver failure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute the variance-sum bound for an observable file")
    p.add_argument("input", help='JSON file {"n": n, "observables": [...]}')
    _add_solver_flags(p, seed_default)
    p.add_argument("--json-out", help="write the result document here instead of stdout")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a golden-value suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    _add_solver_flags(p, seed_default)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="print generators, d tensor or star tensor as JSON")
    p.add_argument("--what", choices=["generators", "dtensor", "startensor"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_dump)

    p = sub.add_parser("oracle", help="brute-force minimum over pure states")
    p.add_argument("input", help='JSON file {"n": n, "observables": [...]}')
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=seed_default)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("entangle", help="test a bipartite state with a variance criterion")
    p.add_argument("state", help='JSON file {"dims": [m, n], "rho": [...]}')
    p.add_argument("observables", help='JSON file {"pairs": [[A1, A2], [B1, B2]]} (A on the first factor) or {"observables": [A, B]}')
    p.add_argument("--mode", choices=["sum", "ppt"], default="sum")
    p.add_argument("--subsystem", choices=["first", "second"], default="second", help="factor transposed in ppt mode")
    _add_solver_flags(p, seed_default)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_entangle)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_seed())
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HermiticityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HERMITIAN
    except (ParseError, DimensionError, StateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverError, ValueError, ArithmeticError) as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
