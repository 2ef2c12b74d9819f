"""Command-line surface.

Subcommands: chm-build, chm-check, chm-rank, mub-scan, mub-search,
ep-certify, ep-optimize, ep-sweep, appendix-c.  Exit codes: 0 success,
1 predicate failure (check came out false), 2 input/usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import entangle, jsonio, mub, presets
from .chm import NotCHMError, NotUnitaryError, build_h3, is_chm, realignment, schmidt_rank
from .entangle import ProductInput, SWEEP_C, build_uab, ep_optimize, max_condition_residuals
from .jsonio import InputFormatError
from .numerics import DimensionMismatchError, Tolerances, svd_values

__all__ = ["CommandConfig", "run", "main"]

COMMANDS = (
    "chm-build",
    "chm-check",
    "chm-rank",
    "mub-scan",
    "mub-search",
    "ep-certify",
    "ep-optimize",
    "ep-sweep",
    "appendix-c",
)

_D_UNIFORM = (1.0 / np.sqrt(3.0),) * 3


@dataclass
class CommandConfig:
    """One parsed invocation."""

    command: str
    preset: str | None = None
    inputs: tuple[str, ...] = ()
    output_path: str | None = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 42
    figure: int | None = None
    restarts: int | None = None
    max_iters: int = 5000
    grid_points: int = 61
    grid_n: int = 200
    margin: float = 1e-3
    threads: int = 1
    scan_products: bool = False
    alpha3_mode: str = "chm"
    strict_real: bool = False


def _default_unitarity_tol() -> float:
    env = os.environ.get("CHM_MUB_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise InputFormatError(f"CHM_MUB_TOL must be a decimal float, got {env!r}") from exc
    return Tolerances().unitarity_tol


def _add_common(sub: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        sub.add_argument("--preset", choices=presets.PRESET_NAMES, help="named parameter set")
        sub.add_argument(
            "--input",
            action="append",
            default=[],
            metavar="PATH",
            help="input JSON file (repeatable where multiple inputs make sense)",
        )
    sub.add_argument("--output", metavar="PATH", help="write the result to this file instead of stdout")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument("--threads", type=int, default=1, help="worker cap for multistart searches")
    sub.add_argument("--unitarity-tol", type=float, default=None)
    sub.add_argument("--modulus-tol", type=float, default=None)
    sub.add_argument("--rank-tol", type=float, default=None)
    sub.add_argument("--eig-clamp", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chm-mub", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("chm-build", help="emit the 6x6 matrix of a preset or params file")
    _add_common(p)

    p = subs.add_parser("chm-check", help="CHM predicate with diagnostics (exit 1 when false)")
    _add_common(p)

    p = subs.add_parser("chm-rank", help="Schmidt rank and realignment singular values")
    _add_common(p)

    p = subs.add_parser("mub-scan", help="exclusion-pattern scan, JSON lines output")
    _add_common(p)
    p.add_argument("--strict-real", action="store_true", help="drop the global-phase fit in real detection")
    p.add_argument("--scan-products", action="store_true", help="also scan pairwise products of the inputs")

    p = subs.add_parser("mub-search", help="multistart search for a trio extension")
    _add_common(p)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=5000)

    p = subs.add_parser("ep-certify", help="pairwise-orthogonality residuals of the branch images")
    _add_common(p)

    p = subs.add_parser("ep-optimize", help="maximize the entangling-power lower bound")
    _add_common(p)
    p.add_argument("--restarts", type=int, default=8)

    p = subs.add_parser("ep-sweep", help="figure-curve CSV over the gate family")
    _add_common(p, with_input=False)
    p.add_argument("--figure", type=int, choices=(3, 4, 5), required=True)
    p.add_argument("--grid-points", type=int, default=61)
    p.add_argument("--alpha3-mode", choices=("chm", "pinned"), default="chm")

    p = subs.add_parser("appendix-c", help="no-solution grid scan for the one-zero family")
    _add_common(p, with_input=False)
    p.add_argument("--grid-n", type=int, default=200)
    p.add_argument("--margin", type=float, default=1e-3)

    return parser


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    unitarity = ns.unitarity_tol if ns.unitarity_tol is not None else _default_unitarity_tol()
    base = Tolerances()
    tol = Tolerances(
        unitarity_tol=unitarity,
        modulus_tol=ns.modulus_tol if ns.modulus_tol is not None else base.modulus_tol,
        rank_rel_tol=ns.rank_tol if ns.rank_tol is not None else base.rank_rel_tol,
        eig_clamp=ns.eig_clamp if ns.eig_clamp is not None else base.eig_clamp,
    )
    return CommandConfig(
        command=ns.command,
        preset=getattr(ns, "preset", None),
        inputs=tuple(getattr(ns, "input", []) or []),
        output_path=ns.output,
        tolerances=tol,
        seed=ns.seed,
        figure=getattr(ns, "figure", None),
        restarts=getattr(ns, "restarts", None),
        max_iters=getattr(ns, "max_iters", 5000),
        grid_points=getattr(ns, "grid_points", 61),
        grid_n=getattr(ns, "grid_n", 200),
        margin=getattr(ns, "margin", 1e-3),
        threads=ns.threads,
        scan_products=getattr(ns, "scan_products", False),
        alpha3_mode=getattr(ns, "alpha3_mode", "chm"),
        strict_real=getattr(ns, "strict_real", False),
    )


def _emit(cfg: CommandConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _load_matrices(cfg: CommandConfig) -> list[np.ndarray]:
    if cfg.preset and cfg.inputs:
        raise InputFormatError("give either --preset or --input, not both")
    if cfg.preset:
        return [presets.preset_matrix(cfg.preset)]
    if not cfg.inputs:
        raise InputFormatError("need --preset or --input")
    return [jsonio.matrix_from_dict(jsonio.load_json_file(path), path) for path in cfg.inputs]


def _load_angles(cfg: CommandConfig):
    if cfg.preset and cfg.inputs:
        raise InputFormatError("give either --preset or --input, not both")
    if cfg.preset:
        if cfg.preset == "eq5":
            raise InputFormatError("preset eq5 has no gate angles; use lemma2i/lemma2ii/example1")
        p = presets.preset_params(cfg.preset)
        return (p.alpha, p.beta, p.gamma)
    if not cfg.inputs:
        raise InputFormatError("need --preset or --input")
    if len(cfg.inputs) != 1:
        raise InputFormatError("exactly one --input expected")
    return jsonio.angles_from_dict(jsonio.load_json_file(cfg.inputs[0]))


def _cmd_chm_build(cfg: CommandConfig) -> int:
    if cfg.preset:
        m = presets.preset_matrix(cfg.preset)
    else:
        if len(cfg.inputs) != 1:
            raise InputFormatError("chm-build needs --preset or exactly one --input params file")
        m = build_h3(jsonio.params_from_dict(jsonio.load_json_file(cfg.inputs[0])))
    _emit(cfg, jsonio.dump_json(jsonio.matrix_to_dict(m)))
    return 0


def _cmd_chm_check(cfg: CommandConfig) -> int:
    (m,) = _load_matrices(cfg)
    chk = is_chm(m, cfg.tolerances)
    lines = [
        f"is_chm: {'true' if chk.ok else 'false'}",
        f"unitarity residual (max norm): {chk.unitarity_residual:.6e}",
        f"modulus deviation from 1/sqrt(6): {chk.modulus_deviation:.6e}",
    ]
    _emit(cfg, "\n".join(lines))
    return 0 if chk.ok else 1


def _cmd_chm_rank(cfg: CommandConfig) -> int:
    (m,) = _load_matrices(cfg)
    rank = schmidt_rank(m, cfg.tolerances)
    svals = svd_values(realignment(m))
    lines = [str(rank), "realignment singular values: " + " ".join(f"{s:.12g}" for s in svals)]
    _emit(cfg, "\n".join(lines))
    return 0


def _cmd_mub_scan(cfg: CommandConfig) -> int:
    import json

    ms = _load_matrices(cfg)
    lines: list[str] = []
    if len(ms) == 1 and not cfg.scan_products:
        for f in mub.exclusion_scan(ms[0], cfg.tolerances, cfg.strict_real):
            lines.append(jsonio.finding_to_line(f))
    else:
        for source, findings in mub.trio_exclusion_scan(
            ms, cfg.tolerances, cfg.strict_real, cfg.scan_products
        ):
            for f in findings:
                record = json.loads(jsonio.finding_to_line(f))
                record["source"] = source
                lines.append(json.dumps(record))
    _emit(cfg, "\n".join(lines) if lines else "")
    return 0


def _cmd_mub_search(cfg: CommandConfig) -> int:
    (m,) = _load_matrices(cfg)
    res = mub.trio_extension_search(
        m,
        restarts=cfg.restarts if cfg.restarts is not None else 20,
        max_iters=cfg.max_iters,
        seed=cfg.seed,
        tol=cfg.tolerances,
        threads=cfg.threads,
    )
    _emit(cfg, jsonio.dump_json(jsonio.search_result_to_dict(res)))
    return 0


def _ep_input(d=_D_UNIFORM) -> ProductInput:
    return ProductInput(SWEEP_C[0], SWEEP_C[1], SWEEP_C[2], *d)


def _cmd_ep_certify(cfg: CommandConfig) -> int:
    alpha, beta, gamma = _load_angles(cfg)
    u = build_uab(alpha, beta, gamma)
    res = max_condition_residuals(u, _ep_input())
    lines = [
        f"overlap |<delta|U2^dag U1|delta>|: {res[0]:.12e}",
        f"overlap |<delta|U3^dag U2|delta>|: {res[1]:.12e}",
        f"overlap |<delta|U1^dag U3|delta>|: {res[2]:.12e}",
    ]
    _emit(cfg, "\n".join(lines))
    return 0


def _cmd_ep_optimize(cfg: CommandConfig) -> int:
    alpha, beta, gamma = _load_angles(cfg)
    u = build_uab(alpha, beta, gamma)
    value, best = ep_optimize(
        u,
        restarts=cfg.restarts if cfg.restarts is not None else 8,
        seed=cfg.seed,
        tol=cfg.tolerances,
        threads=cfg.threads,
    )
    lines = [
        f"{value:.6f}",
        f"best value (ebits): {value:.12g}",
        f"best c: ({best.c1:.12g}, {best.c2:.12g}, {best.c3.real:.12g}{best.c3.imag:+.12g}j)",
        f"best d: ({best.d1:.12g}, {best.d2:.12g}, {best.d3:.12g})",
    ]
    _emit(cfg, "\n".join(lines))
    return 0


def _cmd_ep_sweep(cfg: CommandConfig) -> int:
    curves = []
    for label, spec in entangle.figure_specs(cfg.figure, cfg.grid_points, cfg.alpha3_mode):
        curves.append((label, entangle.sweep(spec, cfg.tolerances)))
    _emit(cfg, "\n".join(entangle.sweep_csv_lines(curves)))
    return 0


def _cmd_appendix_c(cfg: CommandConfig) -> int:
    rep = mub.appendix_c_scan(cfg.grid_n, cfg.margin)
    lines = [
        f"grid_n: {rep.grid_n}  margin: {rep.margin:.3g}",
        f"min distance to (cos t1, cos^2 t2) = (-1, 1): {rep.min_dist_to_minus1_1:.9g}"
        f" at alpha = ({rep.argmin_minus1_1[0]:.9g}, {rep.argmin_minus1_1[1]:.9g})",
        f"min distance to (cos t1, cos^2 t2) = (0, 0): {rep.min_dist_to_0_0:.9g}"
        f" at alpha = ({rep.argmin_0_0[0]:.9g}, {rep.argmin_0_0[1]:.9g})",
        f"no_solutions: {'true' if rep.no_solutions else 'false'}",
    ]
    _emit(cfg, "\n".join(lines))
    return 0 if rep.no_solutions else 1


_DISPATCH = {
    "chm-build": _cmd_chm_build,
    "chm-check": _cmd_chm_check,
    "chm-rank": _cmd_chm_rank,
    "mub-scan": _cmd_mub_scan,
    "mub-search": _cmd_mub_search,
    "ep-certify": _cmd_ep_certify,
    "ep-optimize": _cmd_ep_optimize,
    "ep-sweep": _cmd_ep_sweep,
    "appendix-c": _cmd_appendix_c,
}


def run(cfg: CommandConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        return _DISPATCH[cfg.command](cfg)
    except (InputFormatError, DimensionMismatchError, NotUnitaryError, NotCHMError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
