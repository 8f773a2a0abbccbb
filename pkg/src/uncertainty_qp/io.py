"""JSON encoding of complex matrices as nested ``[re, im]`` pairs."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .bloch import check_hermitian
from .errors import DimensionError, UncertaintyQPError

__all__ = [
    "ParseError",
    "encode_matrix",
    "decode_matrix",
    "load_json",
    "load_observables",
    "load_state",
    "load_entangle_observables",
    "digest",
]


class ParseError(UncertaintyQPError, ValueError):
    """Malformed input file."""


def encode_matrix(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(data) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"expected an n x n grid of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def load_json(path) -> tuple:
    """Return ``(document, raw_bytes)``; raise :class:`ParseError` on bad JSON."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _matrices(doc, key: str) -> list:
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing '{key}'")
    items = doc[key]
    if not isinstance(items, list) or not items:
        raise ParseError(f"'{key}' must be a non-empty list")
    return [decode_matrix(m) for m in items]


def load_observables(doc) -> list:
    """Parse ``{"n": n, "observables": [...]}``; matrices are symmetrized after the Hermitian check."""
    mats = _matrices(doc, "observables")
    n = doc.get("n", mats[0].shape[0])
    if not isinstance(n, int) or any(M.shape != (n, n) for M in mats):
        raise DimensionError(f"observables do not match declared n = {n!r}")
    return [check_hermitian(M) for M in mats]


def load_state(doc) -> tuple:
    """Parse ``{"dims": [m, n], "rho": [...]}`` into ``(dims, rho)``."""
    if not isinstance(doc, dict) or "dims" not in doc or "rho" not in doc:
        raise ParseError("state file needs 'dims' and 'rho'")
    dims = doc["dims"]
    if not (isinstance(dims, list) and len(dims) == 2 and all(isinstance(d, int) for d in dims)):
        raise ParseError("'dims' must be two integers")
    return tuple(dims), check_hermitian(decode_matrix(doc["rho"]))


def load_entangle_observables(doc) -> dict:
    """Parse ``{"pairs": [[A1, A2], [B1, B2]]}`` or ``{"observables": [A, B]}``.

    Pairs are grouped by subsystem: ``A_i`` on the first factor, ``B_i`` on the second.
    """
    if isinstance(doc, dict) and "pairs" in doc:
        pairs = doc["pairs"]
        if not (isinstance(pairs, list) and len(pairs) == 2 and all(isinstance(p, list) and len(p) == 2 for p in pairs)):
            raise ParseError("'pairs' must be [[A1, A2], [B1, B2]]")
        return {"pairs": [tuple(check_hermitian(decode_matrix(M)) for M in p) for p in pairs]}
    mats = _matrices(doc, "observables")
    if len(mats) != 2:
        raise ParseError("ppt mode needs exactly two observables")
    return {"observables": [check_hermitian(M) for M in mats]}
