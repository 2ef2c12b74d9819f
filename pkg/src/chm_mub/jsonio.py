"""Shared JSON wire formats.

Matrix: ``{"rows": R, "cols": C, "data": [[re, im], ...]}`` row-major.
Angle parameters: ``{"alpha": [...], "beta": [...], "gamma": [...],
"v": <matrix>, "w": <matrix>}`` (v and w optional where only the angles
matter).  Findings are emitted as JSON lines; search results as one JSON
object.  Serialization is deterministic (fixed key order, repr floats).
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .chm import H3Params, h3_params
from .mub import ExclusionFinding, TrioSearchResult
from .numerics import as_cmatrix

__all__ = [
    "InputFormatError",
    "matrix_to_dict",
    "matrix_from_dict",
    "params_to_dict",
    "params_from_dict",
    "angles_from_dict",
    "finding_to_line",
    "search_result_to_dict",
    "load_json_file",
    "dump_json",
]


class InputFormatError(ValueError):
    """Malformed or schema-violating input file (CLI exit code 2)."""


def matrix_to_dict(m: np.ndarray) -> dict[str, Any]:
    m = as_cmatrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_dict(d: Any, where: str = "matrix") -> np.ndarray:
    if not isinstance(d, dict):
        raise InputFormatError(f"{where}: expected an object, got {type(d).__name__}")
    try:
        rows = int(d["rows"])
        cols = int(d["cols"])
        data = d["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"{where}: need integer 'rows'/'cols' and a 'data' list ({exc})") from exc
    if rows <= 0 or cols <= 0:
        raise InputFormatError(f"{where}: rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputFormatError(f"{where}: 'data' must hold rows*cols = {rows * cols} [re, im] pairs")
    out = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputFormatError(f"{where}: data[{i}] must be a [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise InputFormatError(f"{where}: data[{i}] must be finite")
        out[i] = complex(re, im)
    return out.reshape(rows, cols)


def params_to_dict(p: H3Params) -> dict[str, Any]:
    return {
        "alpha": list(p.alpha),
        "beta": list(p.beta),
        "gamma": list(p.gamma),
        "v": matrix_to_dict(p.v),
        "w": matrix_to_dict(p.w),
    }


def _angle_triple(d: Any, key: str) -> tuple[float, float, float]:
    try:
        vals = d[key]
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"missing angle list {key!r}") from exc
    if not isinstance(vals, list) or len(vals) != 3:
        raise InputFormatError(f"{key!r} must be a list of 3 reals")
    try:
        triple = tuple(float(v) for v in vals)
    except (TypeError, ValueError) as exc:
        raise InputFormatError(f"{key!r} must contain numbers ({exc})") from exc
    if not all(np.isfinite(triple)):
        raise InputFormatError(f"{key!r} must contain finite numbers")
    return triple


def angles_from_dict(d: Any) -> tuple[tuple[float, float, float], ...]:
    """(alpha, beta, gamma) from a params object; v/w are not required."""
    if not isinstance(d, dict):
        raise InputFormatError(f"expected a params object, got {type(d).__name__}")
    return (_angle_triple(d, "alpha"), _angle_triple(d, "beta"), _angle_triple(d, "gamma"))


def params_from_dict(d: Any) -> H3Params:
    alpha, beta, gamma = angles_from_dict(d)
    if "v" not in d or "w" not in d:
        raise InputFormatError("params object needs 'v' and 'w' matrices")
    v = matrix_from_dict(d["v"], "v")
    w = matrix_from_dict(d["w"], "w")
    try:
        return h3_params(alpha, beta, gamma, v, w)
    except ValueError as exc:
        raise InputFormatError(f"invalid params: {exc}") from exc


def finding_to_line(f: ExclusionFinding) -> str:
    return json.dumps(
        {"kind": f.kind, "rows": list(f.rows), "cols": list(f.cols), "residual": f.residual}
    )


def search_result_to_dict(r: TrioSearchResult) -> dict[str, Any]:
    return {
        "best_penalty": r.best_penalty,
        "restarts_used": r.restarts_used,
        "candidates": [matrix_to_dict(c) for c in r.best_candidates],
    }


def load_json_file(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2)
